#include <memory>

#include <Eigen/LU>

#include "phs1d/errors.hpp"
#include "phs1d/models.hpp"
#include "phs1d/tolerances.hpp"
#include "model_util.hpp"

namespace phs1d {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using detail::ends;
using detail::seg;
using detail::set_block;

namespace {

// Pre-factored relaxation operator Id - mu D^2, optionally with Dirichlet end
// rows. Solve failures surface with a condition estimate.
struct RelaxSolve {
  Eigen::PartialPivLU<MatrixXd> lu;
  MatrixXd inv;
  double rcond = 0.0;

  RelaxSolve(const MatrixXd& L) : lu(L), inv(lu.inverse()) {
    double nl = L.cwiseAbs().rowwise().sum().maxCoeff();
    double ni = inv.cwiseAbs().rowwise().sum().maxCoeff();
    rcond = 1.0 / (nl * ni);
    if (!(rcond > 1e-14)) {
      throw SolverError("relaxation operator is numerically singular, rcond ~ " +
                        std::to_string(rcond));
    }
  }
  VectorXd solve(const VectorXd& b) const { return lu.solve(b); }
};

}  // namespace

// Three-field constitutive-pair form. The stress relaxation channel
// (Id - mu D^2) e_sigma = tau_d D v is folded into the pencil through the
// pre-factored solve; in clamped mode the solve carries Dirichlet end rows and
// the right-hand side is masked so e_sigma vanishes at the ends identically.
// Exact balance, all terms at midpoint states with finite-difference rates:
//   dH/dt = [sigma v] + [e_sigma v] + (mu/tau_d) [(D e_sigma) e_sigma]
//           + mu ax [xi2 D xi2'] - b <v,v> - (1/tau_d)(<e,e> + mu <De,De>).
// The last boundary channel enters with a plus sign and the stored-energy
// channel pairs state with rate; both orientations are forced by the discrete
// algebra.
PHDescriptor nanorod_implicit(const SbpOps& s, const NanorodParams& p, Mode mode) {
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double mu = p.mu_nl, ax = p.axial(), rho = p.rhoA, b = p.b_damp, tau = p.tau_d;
  const double kf = p.k_f;
  if (mu <= 0.0 || rho <= 0.0 || tau <= 0.0) {
    throw ConfigError("nanorod needs positive mu_nl, rhoA, tau_d");
  }

  const bool clamped = (mode == Mode::clamped);
  MatrixXd L = I - mu * D * D;
  MatrixXd mask = I;
  if (clamped) {
    L.row(0).setZero();
    L(0, 0) = 1.0;
    L.row(n - 1).setZero();
    L(n - 1, n - 1) = 1.0;
    mask(0, 0) = 0.0;
    mask(n - 1, n - 1) = 0.0;
  }
  auto relax = std::make_shared<RelaxSolve>(L);
  const MatrixXd fold = D * relax->inv * mask * D;

  PHDescriptor d;
  d.name = "nanorod_implicit";
  d.n = 3 * n;
  MatrixXd E = MatrixXd::Zero(3 * n, 3 * n);
  set_block(E, n, 0, 0, I);
  set_block(E, n, 1, 1, L);
  set_block(E, n, 2, 2, I);
  d.E = E;
  MatrixXd A = MatrixXd::Zero(3 * n, 3 * n);
  set_block(A, n, 0, 2, I / rho);
  set_block(A, n, 1, 2, clamped ? MatrixXd(mask * D / rho) : MatrixXd(D / rho));
  set_block(A, n, 2, 0, -kf * I);
  set_block(A, n, 2, 1, ax * D);
  set_block(A, n, 2, 2, -(b / rho) * I + (tau / rho) * fold);
  d.A = A;

  MatrixXd M = MatrixXd::Zero(3 * n, 3 * n);
  set_block(M, n, 0, 0, kf * Hw);
  set_block(M, n, 1, 1, ax * Hw + mu * ax * D.transpose() * Hw * D);
  set_block(M, n, 2, 2, Hw / rho);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  MatrixXd Lfree = I - mu * D * D;
  d.ham.pairing_part = [sp, n, kf, ax, rho, Lfree](const VectorXd& z) {
    VectorXd x1 = seg(z, n, 0), x2 = seg(z, n, 1), x3 = seg(z, n, 2);
    return 0.5 * (kf * inner(*sp, x1, x1) + ax * inner(*sp, x2, Lfree * x2) +
                  inner(*sp, x3, x3) / rho);
  };
  d.ham.boundary_part = [n, mu, ax, D](const VectorXd& z) {
    VectorXd x2 = seg(z, n, 1);
    return 0.5 * mu * ax * boundary_term(x2, D * x2);
  };

  d.effort = [n, kf, ax, rho](const VectorXd& z) {
    VectorXd e(3 * n);
    e.segment(0, n) = kf * seg(z, n, 0);
    e.segment(n, n) = ax * seg(z, n, 1);
    e.segment(2 * n, n) = seg(z, n, 2) / rho;
    return e;
  };

  auto esigma = [relax, mask, n, rho, tau, D](const VectorXd& z) {
    VectorXd v = seg(z, n, 2) / rho;
    return VectorXd(tau * relax->solve(mask * (D * v)));
  };

  d.boundary_power = [esigma, n, ax, rho, mu, tau, D](const VectorXd& z, const VectorXd&) {
    VectorXd v = seg(z, n, 2) / rho;
    VectorXd sig = ax * seg(z, n, 1);
    VectorXd es = esigma(z);
    return boundary_term(sig, v) + boundary_term(es, v) +
           (mu / tau) * boundary_term(D * es, es);
  };
  d.boundary_energy_rate = [n, mu, ax, D](const VectorXd& z, const VectorXd& rate) {
    return mu * ax * boundary_term(seg(z, n, 1), D * seg(rate, n, 1));
  };
  d.dissipation = [sp, esigma, n, rho, b, tau, mu, D](const VectorXd& z) {
    VectorXd v = seg(z, n, 2) / rho;
    VectorXd es = esigma(z);
    VectorXd des = D * es;
    return b * inner(*sp, v, v) +
           (1.0 / tau) * (inner(*sp, es, es) + mu * inner(*sp, des, des));
  };
  d.ports = [esigma, n, ax, rho, mu, tau, D](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts bp;
    VectorXd v = seg(z, n, 2) / rho;
    VectorXd sig = ax * seg(z, n, 1);
    VectorXd es = esigma(z);
    bp.power = {PowerChannel{ends(v), ends(sig)}, PowerChannel{ends(v), ends(es)},
                PowerChannel{ends(VectorXd((mu / tau) * (D * es))), ends(es)}};
    EnergyChannel ec;
    VectorXd x2 = seg(z, n, 1), r2 = seg(rate, n, 1);
    ec.chi = ends(x2);
    ec.eps = ends(VectorXd(mu * ax * (D * x2)));
    ec.chi_rate = ends(r2);
    ec.eps_rate = ends(VectorXd(mu * ax * (D * r2)));
    ec.rate_on_chi = false;
    bp.energy = {ec};
    return bp;
  };

  // Dissipation kernel as a Gram form in the state, psd by construction.
  MatrixXd Te = (tau / rho) * relax->inv * mask * D;
  MatrixXd Rq = MatrixXd::Zero(3 * n, 3 * n);
  set_block(Rq, n, 2, 2,
            (b / (rho * rho)) * Hw +
                (1.0 / tau) * Te.transpose() * (Hw + mu * D.transpose() * Hw * D) * Te);
  d.Rquad = Rq;

  MatrixXd J = MatrixXd::Zero(3 * n, 3 * n);
  set_block(J, n, 0, 2, I);
  set_block(J, n, 1, 2, D);
  set_block(J, n, 2, 0, -I);
  set_block(J, n, 2, 1, D);
  d.Jop = J;
  MatrixXd Hb = MatrixXd::Zero(3 * n, 3 * n);
  for (int i = 0; i < 3; ++i) set_block(Hb, n, i, i, Hw);
  d.Hblk = Hb;
  d.j_pairing = [n](const VectorXd& x, const VectorXd& y) {
    return boundary_term(seg(x, n, 1), seg(y, n, 2)) + boundary_term(seg(x, n, 2), seg(y, n, 1));
  };

  MatrixXd S = MatrixXd::Zero(3 * n, 3 * n);
  set_block(S, n, 0, 0, kf * I);
  set_block(S, n, 1, 1, ax * I);
  set_block(S, n, 2, 2, I / rho);
  MatrixXd P = MatrixXd::Zero(3 * n, 3 * n);
  set_block(P, n, 0, 0, I);
  set_block(P, n, 1, 1, Lfree);
  set_block(P, n, 2, 2, I);
  d.Sop = S;
  d.Pop = P;
  d.Hsub = Hb;
  d.lagrange_pairing = [sp, n, mu, ax](const VectorXd& x, const VectorXd& y) {
    return mu * ax * boundary_pairing(*sp, 2, seg(x, n, 1), seg(y, n, 1));
  };

  d.wave_speed = std::sqrt(ax / rho);
  if (clamped) {
    d.frozen = {0, n - 1, n, 2 * n - 1, 2 * n, 3 * n - 1};
  }
  return d;
}

// Five-field descriptor with an algebraic stress row (differentiation index 2).
// State (w, p, p_mu, eps, Nbar); the co-state weights are
// diag(k_f, 1/rhoA, 1/(mu rhoA), t_ea, 1). Balance reduces to the single
// boundary monomial [v Nbar] minus the two folded dissipation quadratics.
PHDescriptor nanorod_explicit(const SbpOps& s, const NanorodParams& p, Mode mode) {
  const int n = s.grid.n;
  const MatrixXd& D = s.d1;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const double mu = p.mu_nl, ax = p.axial(), rhoA = p.rhoA, b = p.b_damp, tau = p.tau_d;
  const double kf = p.k_f, tea = p.t_ea_eff();
  const double r33 = tau * ax + mu * b;
  if (mu <= 0.0 || rhoA <= 0.0 || tau <= 0.0) {
    throw ConfigError("nanorod needs positive mu_nl, rhoA, tau_d");
  }

  PHDescriptor d;
  d.name = "nanorod_explicit";
  d.n = 5 * n;
  MatrixXd E = MatrixXd::Zero(5 * n, 5 * n);
  for (int i = 0; i < 4; ++i) set_block(E, n, i, i, I);
  d.E = E;

  MatrixXd J = MatrixXd::Zero(5 * n, 5 * n);
  set_block(J, n, 0, 1, I);
  set_block(J, n, 1, 0, -I);
  set_block(J, n, 1, 4, D);
  set_block(J, n, 2, 3, -I);
  set_block(J, n, 2, 4, I);
  set_block(J, n, 3, 2, I);
  set_block(J, n, 4, 1, D);
  set_block(J, n, 4, 2, -I);
  MatrixXd R = MatrixXd::Zero(5 * n, 5 * n);
  set_block(R, n, 1, 1, b * I);
  set_block(R, n, 2, 2, r33 * I);
  MatrixXd Q = MatrixXd::Zero(5 * n, 5 * n);
  const double qd[5] = {kf, 1.0 / rhoA, 1.0 / (mu * rhoA), tea, 1.0};
  for (int i = 0; i < 5; ++i) set_block(Q, n, i, i, qd[i] * I);
  d.A = (J - R) * Q;

  MatrixXd M = MatrixXd::Zero(5 * n, 5 * n);
  for (int i = 0; i < 4; ++i) set_block(M, n, i, i, qd[i] * Hw);
  d.ham.M = M;
  auto sp = std::make_shared<const SbpOps>(s);
  d.ham.pairing_part = [sp, n, qd = std::array<double, 4>{qd[0], qd[1], qd[2], qd[3]}](
                           const VectorXd& z) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      VectorXd zi = seg(z, n, i);
      acc += 0.5 * qd[i] * inner(*sp, zi, zi);
    }
    return acc;
  };
  d.ham.boundary_part = [](const VectorXd&) { return 0.0; };

  d.effort = [Q](const VectorXd& z) { return VectorXd(Q * z); };

  d.boundary_power = [n, rhoA](const VectorXd& z, const VectorXd&) {
    VectorXd v = seg(z, n, 1) / rhoA;
    return boundary_term(v, seg(z, n, 4));
  };
  d.boundary_energy_rate = [](const VectorXd&, const VectorXd&) { return 0.0; };
  d.dissipation = [sp, n, rhoA, mu, b, r33](const VectorXd& z) {
    VectorXd v = seg(z, n, 1) / rhoA;
    VectorXd e3 = seg(z, n, 2) / (mu * rhoA);
    return b * inner(*sp, v, v) + r33 * inner(*sp, e3, e3);
  };
  d.ports = [n, rhoA](const VectorXd& z, const VectorXd&) {
    BoundaryPorts bp;
    VectorXd v = seg(z, n, 1) / rhoA;
    bp.power = {PowerChannel{ends(v), ends(seg(z, n, 4))}};
    return bp;
  };

  // Slaved fields: eps = Dw, p_mu = mu D p, and Nbar solves the free-end
  // relaxation problem obtained by differentiating the index-2 constraint.
  MatrixXd Lfree = I - mu * D * D;
  auto relax = std::make_shared<RelaxSolve>(Lfree);
  d.consistent_init = [relax, n, D, mu, kf, b, tea, r33, rhoA](const VectorXd& z0) {
    VectorXd z = z0;
    VectorXd w = seg(z, n, 0);
    VectorXd pm = seg(z, n, 1);
    VectorXd v = pm / rhoA;
    VectorXd eps = D * w;
    z.segment(3 * n, n) = eps;
    z.segment(2 * n, n) = mu * (D * pm);
    VectorXd rhs = -mu * kf * (D * w) - mu * b * (D * v) + tea * eps + r33 * (D * v);
    z.segment(4 * n, n) = relax->solve(rhs);
    return z;
  };

  MatrixXd Rq = MatrixXd::Zero(5 * n, 5 * n);
  set_block(Rq, n, 1, 1, (b / (rhoA * rhoA)) * Hw);
  set_block(Rq, n, 2, 2, (r33 / ((mu * rhoA) * (mu * rhoA))) * Hw);
  d.Rquad = Rq;

  d.Jop = J;
  MatrixXd Hb = MatrixXd::Zero(5 * n, 5 * n);
  for (int i = 0; i < 5; ++i) set_block(Hb, n, i, i, Hw);
  d.Hblk = Hb;
  d.j_pairing = [n](const VectorXd& x, const VectorXd& y) {
    return boundary_term(seg(x, n, 1), seg(y, n, 4)) + boundary_term(seg(x, n, 4), seg(y, n, 1));
  };
  d.Sop = Q;
  d.Pop = MatrixXd::Identity(5 * n, 5 * n);
  d.Hsub = Hb;
  d.lagrange_pairing = [](const VectorXd&, const VectorXd&) { return 0.0; };

  d.wave_speed = std::sqrt(std::max(ax, tea) / rhoA);
  if (mode == Mode::clamped) {
    d.frozen = {0, n - 1, n, 2 * n - 1};
  }
  return d;
}

}  // namespace phs1d
