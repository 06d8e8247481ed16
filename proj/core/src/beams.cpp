#include <cmath>
#include <memory>

#include "phs1d/errors.hpp"
#include "phs1d/models.hpp"
#include "model_util.hpp"

namespace phs1d {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using detail::ends;
using detail::seg;
using detail::set_block;

namespace {

void require_positive(const BeamParams& p) {
  if (p.rhoA() <= 0.0 || p.rhoI() <= 0.0 || p.bending() <= 0.0 || p.shear() <= 0.0 ||
      p.t0 < 0.0) {
    throw ConfigError("beam parameters must be positive (tension may be zero)");
  }
}

// Shared five-field structure operator of the shear beam family. State order:
// (tension strain, momentum, bending strain, angular momentum, shear strain).
MatrixXd shear_beam_j(const SbpOps& s) {
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd I = MatrixXd::Identity(n, n);
  MatrixXd J = MatrixXd::Zero(5 * n, 5 * n);
  set_block(J, n, 0, 1, D);
  set_block(J, n, 1, 0, D);
  set_block(J, n, 1, 4, D);
  set_block(J, n, 2, 3, D);
  set_block(J, n, 3, 2, D);
  set_block(J, n, 3, 4, I);
  set_block(J, n, 4, 1, D);
  set_block(J, n, 4, 3, -I);
  return J;
}

MatrixXd shear_beam_q(const SbpOps& s, const BeamParams& p) {
  const int n = s.grid.n;
  const MatrixXd I = MatrixXd::Identity(n, n);
  MatrixXd Q = MatrixXd::Zero(5 * n, 5 * n);
  const double qd[5] = {p.t0, 1.0 / p.rhoA(), p.bending(), 1.0 / p.rhoI(), p.shear()};
  for (int i = 0; i < 5; ++i) set_block(Q, n, i, i, qd[i] * I);
  return Q;
}

PairingFn shear_beam_j_pairing(int n) {
  return [n](const VectorXd& x, const VectorXd& y) {
    return boundary_term(seg(x, n, 0), seg(y, n, 1)) + boundary_term(seg(x, n, 1), seg(y, n, 0)) +
           boundary_term(seg(x, n, 1), seg(y, n, 4)) + boundary_term(seg(x, n, 4), seg(y, n, 1)) +
           boundary_term(seg(x, n, 2), seg(y, n, 3)) + boundary_term(seg(x, n, 3), seg(y, n, 2));
  };
}

MatrixXd block_diag_h(const SbpOps& s, int fields) {
  const int n = s.grid.n;
  const MatrixXd Hw = s.grid.w.asDiagonal();
  MatrixXd Hb = MatrixXd::Zero(fields * n, fields * n);
  for (int i = 0; i < fields; ++i) set_block(Hb, n, i, i, Hw);
  return Hb;
}

}  // namespace

// Five-field strain-velocity shear beam. Lossless; the exact balance is
//   dH/dt = [v sigma_w] + [v N] + [omega sigma_phi]
// with every factor read from the co-state at the midpoint.
PHDescriptor timoshenko_explicit(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;

  PHDescriptor d;
  d.name = "timoshenko_explicit";
  d.n = 5 * n;
  MatrixXd J = shear_beam_j(s);
  MatrixXd Q = shear_beam_q(s, p);
  d.E = MatrixXd::Identity(5 * n, 5 * n);
  d.A = J * Q;
  d.ham.M = Q * block_diag_h(s, 5);
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, p](const VectorXd& z) {
    const double qd[5] = {p.t0, 1.0 / p.rhoA(), p.bending(), 1.0 / p.rhoI(), p.shear()};
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) {
      VectorXd zi = seg(z, n, i);
      acc += 0.5 * qd[i] * inner(*sp, zi, zi);
    }
    return acc;
  };
  d.ham.boundary_part = [](const VectorXd&) { return 0.0; };

  d.effort = [Q](const VectorXd& z) { return VectorXd(Q * z); };
  d.boundary_power = [n, p](const VectorXd& z, const VectorXd&) {
    VectorXd v = seg(z, n, 1) / p.rhoA();
    VectorXd om = seg(z, n, 3) / p.rhoI();
    return boundary_term(v, p.t0 * seg(z, n, 0)) + boundary_term(v, p.shear() * seg(z, n, 4)) +
           boundary_term(om, p.bending() * seg(z, n, 2));
  };
  d.boundary_energy_rate = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, p](const VectorXd& z, const VectorXd&) {
    BoundaryPorts bp;
    VectorXd v = seg(z, n, 1) / p.rhoA();
    VectorXd om = seg(z, n, 3) / p.rhoI();
    bp.power = {PowerChannel{ends(v), ends(VectorXd(p.t0 * seg(z, n, 0)))},
                PowerChannel{ends(v), ends(VectorXd(p.shear() * seg(z, n, 4)))},
                PowerChannel{ends(om), ends(VectorXd(p.bending() * seg(z, n, 2)))}};
    return bp;
  };

  d.Jop = J;
  d.Hblk = block_diag_h(s, 5);
  d.j_pairing = shear_beam_j_pairing(n);
  d.Sop = Q;
  d.Pop = MatrixXd::Identity(5 * n, 5 * n);
  d.Hsub = d.Hblk;
  d.lagrange_pairing = [](const VectorXd&, const VectorXd&) { return 0.0; };

  d.wave_speed =
      std::max(std::sqrt((p.t0 + p.shear()) / p.rhoA()), std::sqrt(p.bending() / p.rhoI()));
  if (mode == Mode::clamped) {
    d.frozen = {n, 2 * n - 1, 3 * n, 4 * n - 1};
  }
  return d;
}

// Four-field displacement form of the shear beam. The constitutive map carries
// the second-order operators; the whole boundary flux lives on the
// stored-energy channels, paired rate-against-state:
//   dH/dt = [w' (T0 Dw + Ts (Dw - phi))] + [phi' (Tb Dphi)].
PHDescriptor timoshenko_implicit(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double t0 = p.t0, ts = p.shear(), tb = p.bending(), ra = p.rhoA(), ri = p.rhoI();

  PHDescriptor d;
  d.name = "timoshenko_implicit";
  d.n = 4 * n;
  MatrixXd J = MatrixXd::Zero(4 * n, 4 * n);
  set_block(J, n, 0, 1, I);
  set_block(J, n, 1, 0, -I);
  set_block(J, n, 2, 3, I);
  set_block(J, n, 3, 2, -I);
  MatrixXd S = MatrixXd::Zero(4 * n, 4 * n);
  set_block(S, n, 0, 0, -(t0 + ts) * DD);
  set_block(S, n, 0, 2, ts * D);
  set_block(S, n, 1, 1, I / ra);
  set_block(S, n, 2, 0, -ts * D);
  set_block(S, n, 2, 2, -tb * DD + ts * I);
  set_block(S, n, 3, 3, I / ri);
  d.E = MatrixXd::Identity(4 * n, 4 * n);
  d.A = J * S;

  MatrixXd M = MatrixXd::Zero(4 * n, 4 * n);
  set_block(M, n, 0, 0, (t0 + ts) * D.transpose() * Hw * D);
  set_block(M, n, 0, 2, -ts * D.transpose() * Hw);
  set_block(M, n, 2, 0, -ts * Hw * D);
  set_block(M, n, 2, 2, tb * D.transpose() * Hw * D + ts * Hw);
  set_block(M, n, 1, 1, Hw / ra);
  set_block(M, n, 3, 3, Hw / ri);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, S](const VectorXd& z) {
    VectorXd sz = S * z;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += 0.5 * inner(*sp, seg(z, n, i), seg(sz, n, i));
    return acc;
  };
  d.ham.boundary_part = [n, D, t0, ts, tb](const VectorXd& z) {
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    return 0.5 * ((t0 + ts) * boundary_term(w, D * w) - ts * boundary_term(w, phi) +
                  tb * boundary_term(phi, D * phi));
  };

  d.effort = [S](const VectorXd& z) { return VectorXd(S * z); };
  d.boundary_power = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.boundary_energy_rate = [n, D, t0, ts, tb](const VectorXd& z, const VectorXd& rate) {
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    VectorXd rw = seg(rate, n, 0), rphi = seg(rate, n, 2);
    VectorXd dw = D * w;
    return boundary_term(rw, t0 * dw) + boundary_term(rw, ts * (dw - phi)) +
           boundary_term(rphi, tb * (D * phi));
  };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, D, t0, ts, tb](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts bp;
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    VectorXd rw = seg(rate, n, 0), rphi = seg(rate, n, 2);
    VectorXd dw = D * w;
    EnergyChannel c1;
    c1.chi = ends(w);
    c1.eps = ends(VectorXd(t0 * dw));
    c1.chi_rate = ends(rw);
    c1.eps_rate = ends(VectorXd(t0 * (D * rw)));
    EnergyChannel c2;
    c2.chi = ends(w);
    c2.eps = ends(VectorXd(ts * (dw - phi)));
    c2.chi_rate = ends(rw);
    c2.eps_rate = ends(VectorXd(ts * (D * rw - rphi)));
    EnergyChannel c3;
    c3.chi = ends(phi);
    c3.eps = ends(VectorXd(tb * (D * phi)));
    c3.chi_rate = ends(rphi);
    c3.eps_rate = ends(VectorXd(tb * (D * rphi)));
    bp.energy = {c1, c2, c3};
    return bp;
  };

  d.Jop = J;
  d.Hblk = block_diag_h(s, 4);
  d.j_pairing = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.Sop = S;
  d.Pop = MatrixXd::Identity(4 * n, 4 * n);
  d.Hsub = d.Hblk;
  d.lagrange_pairing = [sp, n, t0, ts, tb](const VectorXd& x, const VectorXd& y) {
    VectorXd xw = seg(x, n, 0), xf = seg(x, n, 2);
    VectorXd yw = seg(y, n, 0), yf = seg(y, n, 2);
    return -(t0 + ts) * boundary_pairing(*sp, 2, xw, yw) +
           ts * (boundary_term(xf, yw) - boundary_term(xw, yf)) -
           tb * boundary_pairing(*sp, 2, xf, yf);
  };

  d.wave_speed = std::max(std::sqrt((t0 + ts) / ra), std::sqrt(tb / ri));
  if (mode == Mode::clamped) {
    d.frozen = {0, n - 1, n, 2 * n - 1, 2 * n, 3 * n - 1, 3 * n, 4 * n - 1};
  }
  return d;
}

// Thin-beam limit of the five-field form: the angular momentum and shear rows
// turn algebraic (index 1). Slaved fields follow from the two algebraic rows;
// on that manifold the balance matches the shear-beam one with the shear force
// read as -D sigma_phi.
PHDescriptor eb_explicit_dae(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const MatrixXd I = MatrixXd::Identity(n, n);

  PHDescriptor d;
  d.name = "eb_explicit_dae";
  d.n = 5 * n;
  MatrixXd J = shear_beam_j(s);
  MatrixXd Q = shear_beam_q(s, p);
  MatrixXd E = MatrixXd::Zero(5 * n, 5 * n);
  for (int i = 0; i < 3; ++i) set_block(E, n, i, i, I);
  d.E = E;
  d.A = J * Q;
  MatrixXd M = MatrixXd::Zero(5 * n, 5 * n);
  const double qd[3] = {p.t0, 1.0 / p.rhoA(), p.bending()};
  for (int i = 0; i < 3; ++i) set_block(M, n, i, i, qd[i] * Hw);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, qd = std::array<double, 3>{qd[0], qd[1], qd[2]}](const VectorXd& z) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      VectorXd zi = seg(z, n, i);
      acc += 0.5 * qd[i] * inner(*sp, zi, zi);
    }
    return acc;
  };
  d.ham.boundary_part = [](const VectorXd&) { return 0.0; };

  d.effort = [Q](const VectorXd& z) { return VectorXd(Q * z); };
  d.boundary_power = [n, p, D](const VectorXd& z, const VectorXd&) {
    VectorXd v = seg(z, n, 1) / p.rhoA();
    VectorXd sphi = p.bending() * seg(z, n, 2);
    return boundary_term(v, p.t0 * seg(z, n, 0)) + boundary_term(v, VectorXd(-(D * sphi))) +
           boundary_term(D * v, sphi);
  };
  d.boundary_energy_rate = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, p, D](const VectorXd& z, const VectorXd&) {
    BoundaryPorts bp;
    VectorXd v = seg(z, n, 1) / p.rhoA();
    VectorXd sphi = p.bending() * seg(z, n, 2);
    bp.power = {PowerChannel{ends(v), ends(VectorXd(p.t0 * seg(z, n, 0)))},
                PowerChannel{ends(v), ends(VectorXd(-(D * sphi)))},
                PowerChannel{ends(VectorXd(D * v)), ends(sphi)}};
    return bp;
  };

  d.consistent_init = [n, p, D](const VectorXd& z0) {
    VectorXd z = z0;
    VectorXd v = seg(z, n, 1) / p.rhoA();
    VectorXd sphi = p.bending() * seg(z, n, 2);
    z.segment(3 * n, n) = p.rhoI() * (D * v);
    z.segment(4 * n, n) = -(D * sphi) / p.shear();
    return z;
  };

  d.Jop = J;
  d.Hblk = block_diag_h(s, 5);
  d.j_pairing = shear_beam_j_pairing(n);
  d.Sop = Q;
  d.Pop = MatrixXd::Identity(5 * n, 5 * n);
  d.Hsub = d.Hblk;
  d.lagrange_pairing = [](const VectorXd&, const VectorXd&) { return 0.0; };

  d.wave_speed =
      std::max(std::sqrt((p.t0 + p.shear()) / p.rhoA()), std::sqrt(p.bending() / p.rhoI()));
  if (mode == Mode::clamped) {
    d.frozen = {n, n + 1, 2 * n - 2, 2 * n - 1};
  }
  return d;
}

// Reduced three-field thin beam: state (tension strain, bending strain,
// momentum). The curvature row composes two first-derivative applications, so
// every balance identity telescopes through the order-2 pairing.
PHDescriptor eb_explicit_reduced(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd Hw = s.grid.w.asDiagonal();

  PHDescriptor d;
  d.name = "eb_explicit_reduced";
  d.n = 3 * n;
  MatrixXd J = MatrixXd::Zero(3 * n, 3 * n);
  set_block(J, n, 0, 2, D);
  set_block(J, n, 1, 2, DD);
  set_block(J, n, 2, 0, D);
  set_block(J, n, 2, 1, -DD);
  MatrixXd Q = MatrixXd::Zero(3 * n, 3 * n);
  const double qd[3] = {p.t0, p.bending(), 1.0 / p.rhoA()};
  const MatrixXd I = MatrixXd::Identity(n, n);
  for (int i = 0; i < 3; ++i) set_block(Q, n, i, i, qd[i] * I);
  d.E = MatrixXd::Identity(3 * n, 3 * n);
  d.A = J * Q;
  MatrixXd M = MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < 3; ++i) set_block(M, n, i, i, qd[i] * Hw);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, qd = std::array<double, 3>{qd[0], qd[1], qd[2]}](const VectorXd& z) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      VectorXd zi = seg(z, n, i);
      acc += 0.5 * qd[i] * inner(*sp, zi, zi);
    }
    return acc;
  };
  d.ham.boundary_part = [](const VectorXd&) { return 0.0; };

  d.effort = [Q](const VectorXd& z) { return VectorXd(Q * z); };
  d.boundary_power = [n, p, D](const VectorXd& z, const VectorXd&) {
    VectorXd v = seg(z, n, 2) / p.rhoA();
    VectorXd sphi = p.bending() * seg(z, n, 1);
    return boundary_term(v, p.t0 * seg(z, n, 0)) + boundary_term(v, VectorXd(-(D * sphi))) +
           boundary_term(D * v, sphi);
  };
  d.boundary_energy_rate = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, p, D](const VectorXd& z, const VectorXd&) {
    BoundaryPorts bp;
    VectorXd v = seg(z, n, 2) / p.rhoA();
    VectorXd sphi = p.bending() * seg(z, n, 1);
    bp.power = {PowerChannel{ends(v), ends(VectorXd(p.t0 * seg(z, n, 0)))},
                PowerChannel{ends(v), ends(VectorXd(-(D * sphi)))},
                PowerChannel{ends(VectorXd(D * v)), ends(sphi)}};
    return bp;
  };

  d.Jop = J;
  d.Hblk = block_diag_h(s, 3);
  d.j_pairing = [sp, n](const VectorXd& x, const VectorXd& y) {
    VectorXd x0 = seg(x, n, 0), x1 = seg(x, n, 1), x2 = seg(x, n, 2);
    VectorXd y0 = seg(y, n, 0), y1 = seg(y, n, 1), y2 = seg(y, n, 2);
    return boundary_term(x0, y2) + boundary_term(x2, y0) - boundary_pairing(*sp, 2, x1, y2) +
           boundary_pairing(*sp, 2, x2, y1);
  };
  d.Sop = Q;
  d.Pop = MatrixXd::Identity(3 * n, 3 * n);
  d.Hsub = d.Hblk;
  d.lagrange_pairing = [](const VectorXd&, const VectorXd&) { return 0.0; };

  d.wave_speed =
      std::max(std::sqrt((p.t0 + p.shear()) / p.rhoA()), std::sqrt(p.bending() / p.rhoI()));
  if (mode == Mode::clamped) {
    d.frozen = {2 * n, 2 * n + 1, 3 * n - 2, 3 * n - 1};
  }
  return d;
}

// Four-field displacement thin beam keeping the rotation constraint phi = Dw as
// an algebraic row; the bending multiplier is eliminated into the momentum row.
// Balance, all on the stored-energy channels:
//   dH/dt = [w' (T0 Dw)] + [w' lambda] + [(Dw)' (Tb Dphi)],
// lambda = -D(Tb Dphi).
PHDescriptor eb_implicit_dae(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double t0 = p.t0, tb = p.bending(), ra = p.rhoA(), ri = p.rhoI();

  PHDescriptor d;
  d.name = "eb_implicit_dae";
  d.n = 4 * n;
  MatrixXd E = MatrixXd::Zero(4 * n, 4 * n);
  set_block(E, n, 0, 0, I);
  set_block(E, n, 1, 1, I);
  set_block(E, n, 2, 0, D);
  d.E = E;
  MatrixXd A = MatrixXd::Zero(4 * n, 4 * n);
  set_block(A, n, 0, 1, I / ra);
  set_block(A, n, 1, 0, t0 * DD);
  set_block(A, n, 1, 2, -tb * D * DD);
  set_block(A, n, 2, 3, I / ri);
  set_block(A, n, 3, 0, D);
  set_block(A, n, 3, 2, -I);
  d.A = A;

  MatrixXd M = MatrixXd::Zero(4 * n, 4 * n);
  set_block(M, n, 0, 0, t0 * D.transpose() * Hw * D);
  set_block(M, n, 1, 1, Hw / ra);
  set_block(M, n, 2, 2, tb * D.transpose() * Hw * D);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, t0, tb, ra, DD](const VectorXd& z) {
    VectorXd w = seg(z, n, 0), pm = seg(z, n, 1), phi = seg(z, n, 2);
    return 0.5 * (-t0 * inner(*sp, w, DD * w) + inner(*sp, pm, pm) / ra -
                  tb * inner(*sp, phi, DD * phi));
  };
  d.ham.boundary_part = [n, D, t0, tb](const VectorXd& z) {
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    return 0.5 * (t0 * boundary_term(w, D * w) + tb * boundary_term(phi, D * phi));
  };

  d.effort = [n, t0, tb, ra, ri, D, DD](const VectorXd& z) {
    VectorXd e(4 * n);
    e.segment(0, n) = -t0 * (DD * seg(z, n, 0));
    e.segment(n, n) = seg(z, n, 1) / ra;
    e.segment(2 * n, n) = -tb * (DD * seg(z, n, 2));
    e.segment(3 * n, n) = seg(z, n, 3) / ri;
    return e;
  };
  d.boundary_power = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.boundary_energy_rate = [n, D, t0, tb](const VectorXd& z, const VectorXd& rate) {
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    VectorXd rw = seg(rate, n, 0);
    VectorXd lam = -(D * VectorXd(tb * (D * phi)));
    return boundary_term(rw, t0 * (D * w)) + boundary_term(rw, lam) +
           boundary_term(D * rw, tb * (D * phi));
  };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, D, t0, tb](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts bp;
    VectorXd w = seg(z, n, 0), phi = seg(z, n, 2);
    VectorXd rw = seg(rate, n, 0);
    EnergyChannel c1;
    c1.chi = ends(w);
    c1.eps = ends(VectorXd(t0 * (D * w)));
    c1.chi_rate = ends(rw);
    c1.eps_rate = ends(VectorXd(t0 * (D * rw)));
    EnergyChannel c2;
    c2.chi = ends(w);
    c2.eps = ends(VectorXd(-(D * VectorXd(tb * (D * phi)))));
    c2.chi_rate = ends(rw);
    c2.eps_rate = ends(VectorXd(-(D * VectorXd(tb * (D * seg(rate, n, 2))))));
    EnergyChannel c3;
    c3.chi = ends(VectorXd(D * w));
    c3.eps = ends(VectorXd(tb * (D * phi)));
    c3.chi_rate = ends(VectorXd(D * rw));
    c3.eps_rate = ends(VectorXd(tb * (D * seg(rate, n, 2))));
    bp.energy = {c1, c2, c3};
    return bp;
  };

  d.consistent_init = [n, D, ra, ri](const VectorXd& z0) {
    VectorXd z = z0;
    z.segment(2 * n, n) = D * seg(z, n, 0);
    z.segment(3 * n, n) = ri * (D * VectorXd(seg(z, n, 1) / ra));
    return z;
  };

  // Constitutive certificate on the reduced (w, p) pair.
  MatrixXd Sr = MatrixXd::Zero(2 * n, 2 * n);
  set_block(Sr, n, 0, 0, -t0 * DD + tb * DD * DD);
  set_block(Sr, n, 1, 1, I / ra);
  d.Sop = Sr;
  d.Pop = MatrixXd::Identity(2 * n, 2 * n);
  d.Hsub = block_diag_h(s, 2);
  d.lagrange_pairing = [sp, n, t0, tb](const VectorXd& x, const VectorXd& y) {
    VectorXd xw = seg(x, n, 0), yw = seg(y, n, 0);
    return -t0 * boundary_pairing(*sp, 2, xw, yw) + tb * boundary_pairing(*sp, 4, xw, yw);
  };

  d.wave_speed = std::max(std::sqrt((t0 + p.shear()) / ra), std::sqrt(tb / ri));
  if (mode == Mode::clamped) {
    d.frozen = {0, 1, n - 2, n - 1, n, n + 1, 2 * n - 2, 2 * n - 1};
  }
  return d;
}

// Two-field displacement thin beam: p' = T0 D^2 w - Tb D^4 w.
PHDescriptor eb_implicit_reduced(const SbpOps& s, const BeamParams& p, Mode mode) {
  require_positive(p);
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double t0 = p.t0, tb = p.bending(), ra = p.rhoA();

  PHDescriptor d;
  d.name = "eb_implicit_reduced";
  d.n = 2 * n;
  d.E = MatrixXd::Identity(2 * n, 2 * n);
  MatrixXd A = MatrixXd::Zero(2 * n, 2 * n);
  set_block(A, n, 0, 1, I / ra);
  set_block(A, n, 1, 0, t0 * DD - tb * DD * DD);
  d.A = A;
  MatrixXd M = MatrixXd::Zero(2 * n, 2 * n);
  set_block(M, n, 0, 0,
            t0 * D.transpose() * Hw * D + tb * DD.transpose() * Hw * DD);
  set_block(M, n, 1, 1, Hw / ra);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, t0, tb, ra, DD](const VectorXd& z) {
    VectorXd w = seg(z, n, 0), pm = seg(z, n, 1);
    return 0.5 * (-t0 * inner(*sp, w, DD * w) + tb * inner(*sp, w, DD * (DD * w)) +
                  inner(*sp, pm, pm) / ra);
  };
  d.ham.boundary_part = [n, D, DD, t0, tb](const VectorXd& z) {
    VectorXd w = seg(z, n, 0);
    VectorXd dw = D * w, d2w = DD * w, d3w = D * d2w;
    return 0.5 * (t0 * boundary_term(w, dw) - tb * boundary_term(d3w, w) +
                  tb * boundary_term(d2w, dw));
  };

  d.effort = [n, t0, tb, ra, DD](const VectorXd& z) {
    VectorXd e(2 * n);
    e.segment(0, n) = -t0 * (DD * seg(z, n, 0)) + tb * (DD * (DD * seg(z, n, 0)));
    e.segment(n, n) = seg(z, n, 1) / ra;
    return e;
  };
  d.boundary_power = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.boundary_energy_rate = [n, D, DD, t0, tb](const VectorXd& z, const VectorXd& rate) {
    VectorXd w = seg(z, n, 0);
    VectorXd rw = seg(rate, n, 0);
    VectorXd sig = tb * (DD * w);
    return boundary_term(rw, t0 * (D * w)) + boundary_term(rw, VectorXd(-(D * sig))) +
           boundary_term(D * rw, sig);
  };
  d.dissipation = [](const VectorXd&) { return 0.0; };
  d.ports = [n, D, DD, t0, tb](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts bp;
    VectorXd w = seg(z, n, 0);
    VectorXd rw = seg(rate, n, 0);
    VectorXd sig = tb * (DD * w);
    VectorXd rsig = tb * (DD * seg(rate, n, 0));
    EnergyChannel c1;
    c1.chi = ends(w);
    c1.eps = ends(VectorXd(t0 * (D * w)));
    c1.chi_rate = ends(rw);
    c1.eps_rate = ends(VectorXd(t0 * (D * rw)));
    EnergyChannel c2;
    c2.chi = ends(w);
    c2.eps = ends(VectorXd(-(D * sig)));
    c2.chi_rate = ends(rw);
    c2.eps_rate = ends(VectorXd(-(D * rsig)));
    EnergyChannel c3;
    c3.chi = ends(VectorXd(D * w));
    c3.eps = ends(sig);
    c3.chi_rate = ends(VectorXd(D * rw));
    c3.eps_rate = ends(rsig);
    bp.energy = {c1, c2, c3};
    return bp;
  };

  MatrixXd Sr = MatrixXd::Zero(2 * n, 2 * n);
  set_block(Sr, n, 0, 0, -t0 * DD + tb * DD * DD);
  set_block(Sr, n, 1, 1, I / ra);
  d.Sop = Sr;
  d.Pop = MatrixXd::Identity(2 * n, 2 * n);
  d.Hsub = block_diag_h(s, 2);
  d.lagrange_pairing = [sp, n, t0, tb](const VectorXd& x, const VectorXd& y) {
    VectorXd xw = seg(x, n, 0), yw = seg(y, n, 0);
    return -t0 * boundary_pairing(*sp, 2, xw, yw) + tb * boundary_pairing(*sp, 4, xw, yw);
  };

  d.wave_speed = std::max(std::sqrt((t0 + p.shear()) / ra), std::sqrt(tb / p.rhoI()));
  if (mode == Mode::clamped) {
    d.frozen = {0, 1, n - 2, n - 1, n, n + 1, 2 * n - 2, 2 * n - 1};
  }
  return d;
}

std::vector<std::string> field_names(const std::string& model_name) {
  if (model_name == "dzektser_explicit") return {"head"};
  if (model_name == "nanorod_explicit") {
    return {"displacement", "momentum", "micro_momentum", "stretch", "axial_force"};
  }
  if (model_name == "nanorod_implicit") return {"displacement", "stretch", "momentum"};
  if (model_name == "timoshenko_explicit" || model_name == "eb_explicit_dae") {
    return {"tension_strain", "momentum", "bending_strain", "angular_momentum", "shear_strain"};
  }
  if (model_name == "timoshenko_implicit" || model_name == "eb_implicit_dae") {
    return {"deflection", "momentum", "rotation", "angular_momentum"};
  }
  if (model_name == "eb_explicit_reduced") return {"tension_strain", "bending_strain", "momentum"};
  if (model_name == "eb_implicit_reduced") return {"deflection", "momentum"};
  throw ConfigError("unknown model name '" + model_name + "'");
}

}  // namespace phs1d
