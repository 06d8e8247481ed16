#include <cmath>
#include <memory>

#include "phs1d/errors.hpp"
#include "phs1d/models.hpp"
#include "model_util.hpp"

namespace phs1d {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using detail::set_block;

// Folded pencil on the head field:
//   (Id - eps^2 D^2) h' = (alpha D^2 - beta D^4) h.
// Energy 0.5 <h,h> + 0.5 eps^2 <Dh,Dh>; the pairing form 0.5 <h, (Id-eps^2 D^2) h>
// differs from it by exactly 0.5 eps^2 [h Dh], which is the stored boundary
// correction. The balance splits as
//   dH/dt = alpha [h Dh] + beta ([Dh D^2h] - [h D^3h]) + eps^2 [h Dh']
//           - alpha <Dh,Dh> - beta <D^2h,D^2h>,
// exact at midpoints of the time stepper. Note the nonlocal boundary channel
// pairs the state with the rate of its co-observable, not the reverse; the
// reverse pairing leaves an O(1) remainder.
PHDescriptor dzektser_explicit(const SbpOps& s, const DzektserParams& p, Mode mode) {
  if (p.alpha_s < 0.0 || p.beta_s < 0.0) {
    throw ConfigError("seepage mobilities must be nonnegative");
  }
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd D2 = D * D;
  const MatrixXd D3 = D * D2;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double al = p.alpha_s, be = p.beta_s, e2 = p.eps_nl * p.eps_nl;

  PHDescriptor d;
  d.name = "dzektser_explicit";
  d.n = n;
  d.E = I - e2 * D2;
  d.A = al * D2 - be * D2 * D2;
  d.ham.M = Hw + e2 * D.transpose() * Hw * D;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, E = d.E](const VectorXd& z) { return 0.5 * inner(*sp, z, E * z); };
  d.ham.boundary_part = [D, e2](const VectorXd& z) {
    return 0.5 * e2 * boundary_term(z, D * z);
  };

  d.effort = [](const VectorXd& z) { return z; };

  d.boundary_power = [D, D2, D3, al, be](const VectorXd& z, const VectorXd&) {
    return al * boundary_term(z, D * z) +
           be * (boundary_term(D * z, D2 * z) - boundary_term(z, D3 * z));
  };
  d.boundary_energy_rate = [D, e2](const VectorXd& z, const VectorXd& rate) {
    return e2 * boundary_term(z, D * rate);
  };
  d.dissipation = [sp, D, D2, al, be](const VectorXd& z) {
    VectorXd dz = D * z;
    VectorXd d2z = D2 * z;
    return al * inner(*sp, dz, dz) + be * inner(*sp, d2z, d2z);
  };
  d.ports = [D, D2, D3, al, be, e2](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts bp;
    VectorXd dz = D * z;
    PowerChannel c1{detail::ends(z), detail::ends(al * dz)};
    PowerChannel c2{detail::ends(z), detail::ends(VectorXd(-be * (D3 * z)))};
    PowerChannel c3{detail::ends(dz), detail::ends(VectorXd(be * (D2 * z)))};
    bp.power = {c1, c2, c3};
    EnergyChannel ec;
    ec.chi = detail::ends(z);
    ec.eps = detail::ends(VectorXd(e2 * dz));
    ec.chi_rate = detail::ends(rate);
    ec.eps_rate = detail::ends(VectorXd(e2 * (D * rate)));
    ec.rate_on_chi = false;
    bp.energy = {ec};
    return bp;
  };

  d.Rquad = al * D.transpose() * Hw * D + be * D2.transpose() * Hw * D2;

  // Unfolded three-field structure operator and its exact boundary pairing.
  MatrixXd J = MatrixXd::Zero(3 * n, 3 * n);
  set_block(J, n, 0, 1, D);
  set_block(J, n, 0, 2, -D2);
  set_block(J, n, 1, 0, D);
  set_block(J, n, 2, 0, D2);
  d.Jop = J;
  MatrixXd Hb3 = MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < 3; ++i) set_block(Hb3, n, i, i, Hw);
  d.Hblk = Hb3;
  d.j_pairing = [sp, n](const VectorXd& x, const VectorXd& y) {
    VectorXd x0 = detail::seg(x, n, 0), x1 = detail::seg(x, n, 1), x2 = detail::seg(x, n, 2);
    VectorXd y0 = detail::seg(y, n, 0), y1 = detail::seg(y, n, 1), y2 = detail::seg(y, n, 2);
    return boundary_term(x0, y1) + boundary_term(x1, y0) + boundary_pairing(*sp, 2, x0, y2) -
           boundary_pairing(*sp, 2, x2, y0);
  };

  d.Sop = d.E;
  d.Pop = I;
  d.Hsub = Hw;
  d.lagrange_pairing = [sp, e2](const VectorXd& x, const VectorXd& y) {
    return -e2 * boundary_pairing(*sp, 2, x, y);
  };

  d.wave_speed = 1.0;
  if (mode == Mode::clamped) {
    // Head and slope vanish at both ends; the pure second-order case needs one
    // condition per end only.
    if (be == 0.0 && e2 == 0.0) {
      d.frozen = {0, n - 1};
    } else {
      d.frozen = {0, 1, n - 2, n - 1};
    }
  }
  return d;
}

BalanceTerms dzektser_power_balance_terms(const SbpOps& s, const DzektserParams& p) {
  const MatrixXd& D = s.d1;
  const MatrixXd D2 = D * D;
  const MatrixXd D3 = D * D2;
  const double al = p.alpha_s, be = p.beta_s, e2 = p.eps_nl * p.eps_nl;

  BalanceTerms t;
  t.names = {"alpha_flux", "beta_flux_grad", "beta_flux_head", "nonlocal_rate",
             "alpha_dissipation", "beta_dissipation"};
  t.columns.push_back([D, al](const VectorXd& z, const VectorXd&) {
    return al * boundary_term(z, D * z);
  });
  t.columns.push_back([D, D2, be](const VectorXd& z, const VectorXd&) {
    return be * boundary_term(D * z, D2 * z);
  });
  t.columns.push_back([D3, be](const VectorXd& z, const VectorXd&) {
    return -be * boundary_term(z, D3 * z);
  });
  t.columns.push_back([D, e2](const VectorXd& z, const VectorXd& rate) {
    return e2 * boundary_term(z, D * rate);
  });
  auto sp = std::make_shared<const SbpOps>(s);
  t.columns.push_back([sp, D, al](const VectorXd& z, const VectorXd&) {
    VectorXd dz = D * z;
    return -al * inner(*sp, dz, dz);
  });
  t.columns.push_back([sp, D2, be](const VectorXd& z, const VectorXd&) {
    VectorXd d2z = D2 * z;
    return -be * inner(*sp, d2z, d2z);
  });
  return t;
}

}  // namespace phs1d
