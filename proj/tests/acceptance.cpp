// Certification gate: one pass/fail line per acceptance criterion, nonzero
// exit when any criterion fails. Tolerances come from the library's central
// table (scaled by PHS1D_TOL_SCALE like everything else).

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <phs1d/audit.hpp>
#include <phs1d/grid.hpp>
#include <phs1d/integrator.hpp>
#include <phs1d/models.hpp>
#include <phs1d/sbp.hpp>
#include <phs1d/tolerances.hpp>
#include <phs1d/transforms.hpp>

using namespace phs1d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr unsigned kSeed = 0x5bb1u;

bool g_all_ok = true;

void line(int id, const std::string& label, double measured, double tol) {
  const bool pass = measured <= tol;
  g_all_ok = g_all_ok && pass;
  std::printf("criterion %2d %-46s %s (measured %.3e, tolerance %.3e)\n", id,
              (label + ":").c_str(), pass ? "PASS" : "FAIL", measured, tol);
}

VectorXd gaussian_profile(const Grid& g, double c, double w, double amp) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - c) / w;
    v[i] = amp * std::exp(-0.5 * r * r);
  }
  return v;
}

VectorXd seeded_state(const PHDescriptor& d, const Grid& g) {
  const int nb = d.n / static_cast<int>(field_names(d.name).size());
  VectorXd z0 = VectorXd::Zero(d.n);
  z0.segment(0, nb) = gaussian_profile(g, 0.5, 0.12, 1.0);
  if (d.n > nb) z0.segment(nb, nb) = gaussian_profile(g, 0.4, 0.1, 0.5);
  for (int idx : d.frozen) z0[idx] = 0.0;
  if (d.consistent_init) z0 = d.consistent_init(z0);
  return z0;
}

std::vector<std::pair<std::string, PHDescriptor>> nine_models(const SbpOps& s, Mode mode) {
  DzektserParams dz;
  NanorodParams nr;
  BeamParams bm;
  std::vector<std::pair<std::string, PHDescriptor>> out;
  out.emplace_back("dzektser", dzektser_explicit(s, dz, mode));
  out.emplace_back("nanorod_explicit", nanorod_explicit(s, nr, mode));
  out.emplace_back("nanorod_implicit", nanorod_implicit(s, nr, mode));
  out.emplace_back("timoshenko_explicit", timoshenko_explicit(s, bm, mode));
  out.emplace_back("timoshenko_implicit", timoshenko_implicit(s, bm, mode));
  out.emplace_back("eb_explicit_dae", eb_explicit_dae(s, bm, mode));
  out.emplace_back("eb_explicit_reduced", eb_explicit_reduced(s, bm, mode));
  out.emplace_back("eb_implicit_dae", eb_implicit_dae(s, bm, mode));
  out.emplace_back("eb_implicit_reduced", eb_implicit_reduced(s, bm, mode));
  return out;
}

double criterion_green(const SbpOps& s) {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    VectorXd x(s.grid.n), y(s.grid.n);
    for (int i = 0; i < s.grid.n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    for (int k = 1; k <= 4; ++k) {
      MatrixXd dk = compose_power(s, k);
      const double lhs = inner(s, VectorXd(dk * x), y);
      const double rhs = (k % 2 == 0 ? 1.0 : -1.0) * inner(s, x, VectorXd(dk * y));
      const double bp = boundary_pairing(s, k, x, y);
      const double scale = std::max({1.0, std::abs(lhs), std::abs(bp)});
      worst = std::max(worst, std::abs(green_residual(s, k, x, y)) / scale);
      worst = std::max(worst, std::abs(lhs - rhs - bp) / scale);
    }
  }
  return worst;
}

double criterion_free_ledgers(const SbpOps& s) {
  double worst = 0.0;
  for (auto& [label, d] : nine_models(s, Mode::free_ends)) {
    RunResult r = run_midpoint(d, seeded_state(d, s.grid), 1e-3, 200, false);
    worst = std::max(worst, r.max_residual);
  }
  return worst;
}

double criterion_clamped_decay(const SbpOps& s) {
  DzektserParams dz;
  NanorodParams nr;
  std::vector<PHDescriptor> models;
  models.push_back(dzektser_explicit(s, dz, Mode::clamped));
  models.push_back(nanorod_explicit(s, nr, Mode::clamped));
  models.push_back(nanorod_implicit(s, nr, Mode::clamped));
  double worst = 0.0;
  for (auto& d : models) {
    VectorXd z0 = seeded_state(d, s.grid);
    RunResult r = run_midpoint(d, z0, 1e-3, 400, true);
    const double h0 = d.hamiltonian(z0);
    double prev = h0;
    for (size_t k = 1; k < r.states.size(); ++k) {
      const double h = d.hamiltonian(r.states[k]);
      worst = std::max(worst, (h - prev) / h0);
      prev = h;
    }
  }
  return worst;
}

double criterion_clamped_conservation(const SbpOps& s) {
  BeamParams bm;
  std::vector<PHDescriptor> models;
  models.push_back(timoshenko_explicit(s, bm, Mode::clamped));
  models.push_back(timoshenko_implicit(s, bm, Mode::clamped));
  models.push_back(eb_explicit_dae(s, bm, Mode::clamped));
  models.push_back(eb_explicit_reduced(s, bm, Mode::clamped));
  models.push_back(eb_implicit_dae(s, bm, Mode::clamped));
  models.push_back(eb_implicit_reduced(s, bm, Mode::clamped));
  double worst = 0.0;
  for (auto& d : models) {
    VectorXd z0 = seeded_state(d, s.grid);
    RunResult r = run_midpoint(d, z0, 1e-3, 400, true);
    const double h0 = d.hamiltonian(z0);
    for (const auto& zk : r.states) {
      worst = std::max(worst, std::abs(d.hamiltonian(zk) - h0) / h0);
    }
  }
  return worst;
}

struct VariationalMeasures {
  double worst = 0.0;  // central difference vs gradient pairing, nine models
  double e2 = 0.0;     // second-derivative mode quotient, relative error
  double e4 = 0.0;     // fourth-derivative mode quotient, relative error
};

VariationalMeasures criterion_variational(const SbpOps& s) {
  VariationalMeasures out;
  for (auto& [label, d] : nine_models(s, Mode::free_ends)) {
    VariationalReport vr =
        variational_check(d, 50, kSeed, 1e-4, tolerance::scaled(tolerance::variational));
    out.worst = std::max(out.worst, vr.worst);
  }

  SbpOps sq = build_sbp(build_grid(401));
  VectorXd sv(sq.grid.n);
  for (int i = 0; i < sq.grid.n; ++i) sv[i] = std::sin(std::numbers::pi * sq.grid.x[i]);
  const double denom = inner(sq, sv, sv);
  const MatrixXd DD = sq.d1 * sq.d1;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double q2 = inner(sq, sv, VectorXd(-(DD * sv))) / denom;
  const double q4 = inner(sq, sv, VectorXd(DD * (DD * sv))) / denom;
  out.e2 = std::abs(q2 - pi2) / pi2;
  out.e4 = std::abs(q4 - pi2 * pi2) / (pi2 * pi2);
  return out;
}

// Heat-limit decay: with the fourth-order mobility and the nonlocal metric both
// switched off, the clamped model is the plain heat equation, whose lowest mode
// halves its energy at rate 2 pi^2.
double criterion_heat_rate() {
  const int n = 201;
  SbpOps s = build_sbp(build_grid(n));
  DzektserParams p;
  p.beta_s = 0.0;
  p.eps_nl = 0.0;
  PHDescriptor d = dzektser_explicit(s, p, Mode::clamped);
  VectorXd z0(n);
  for (int i = 0; i < n; ++i) z0[i] = std::sin(std::numbers::pi * s.grid.x[i]);
  for (int idx : d.frozen) z0[idx] = 0.0;
  const double dt = 1e-4;
  RunResult r = run_midpoint(d, z0, dt, 1, false);
  const double ratio = d.hamiltonian(r.final_state) / d.hamiltonian(z0);
  const double target = std::exp(-2.0 * std::numbers::pi * std::numbers::pi * dt);
  return std::abs(ratio - target) / target;
}

// Pinned-bending spectrum: the slowest oscillatory eigenvalue of the two-field
// thin-beam block under zero tension must sit at sqrt(Tb / rhoA) pi^2.
double criterion_bending_frequency() {
  const int n = 301;
  SbpOps s = build_sbp(build_grid(n));
  BeamParams p;
  const MatrixXd DD = s.d1 * s.d1;
  MatrixXd a_sub = MatrixXd::Zero(2 * n, 2 * n);
  a_sub.block(0, n, n, n) = DD / p.rhoA();
  a_sub.block(n, 0, n, n) = -p.bending() * DD;

  std::vector<int> kept;
  for (int i = 0; i < 2 * n; ++i) {
    if (i == 0 || i == n - 1 || i == n || i == 2 * n - 1) continue;
    kept.push_back(i);
  }
  const int nk = static_cast<int>(kept.size());
  MatrixXd a_kept(nk, nk);
  for (int j = 0; j < nk; ++j) {
    for (int i = 0; i < nk; ++i) a_kept(i, j) = a_sub(kept[i], kept[j]);
  }

  Eigen::EigenSolver<MatrixXd> eig(a_kept, false);
  double omega = 0.0;
  for (int i = 0; i < nk; ++i) {
    const double im = std::abs(eig.eigenvalues()[i].imag());
    if (im > 1.0 && (omega == 0.0 || im < omega)) omega = im;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double target = std::sqrt(p.bending() / p.rhoA()) * pi2;
  return std::abs(omega * omega - target * target) / (target * target);
}

}  // namespace

int main() {
  SbpOps s = build_sbp(build_grid(101));

  line(1, "summation-by-parts green identity, orders 1-4", criterion_green(s),
       tolerance::scaled(tolerance::green));
  line(2, "free-end energy ledgers, nine models", criterion_free_ledgers(s),
       tolerance::scaled(tolerance::ledger));
  line(3, "clamped dissipative decay is monotone", criterion_clamped_decay(s),
       tolerance::scaled(tolerance::decay));
  line(4, "clamped lossless beams conserve energy", criterion_clamped_conservation(s),
       tolerance::scaled(tolerance::conservation));

  TransformReport tr =
      verify_transform_identities(s, 3, kSeed, tolerance::scaled(tolerance::transform));
  const double certs = std::max({tr.antider_identity, tr.j_conjugation, tr.s_conjugation,
                                 tr.reduced_j, tr.fg_identity, tr.adjoint_identity});
  line(5, "representation-map operator certificates", certs,
       tolerance::scaled(tolerance::transform));
  line(6, "constraint projectors commute with the maps", tr.projector_intertwine,
       tolerance::scaled(tolerance::projector));

  DiagramReport dg = run_diagram(s, BeamParams{}, 1e-3, 50, tolerance::scaled(tolerance::diagram));
  line(7, "representation diagram closes on trajectories", dg.worst,
       tolerance::scaled(tolerance::diagram));

  EquivalenceReport eq =
      verify_equivalence(s, BeamParams{}, 1e-3, 100, tolerance::scaled(tolerance::equivalence));
  line(8, "constrained and reduced trajectories agree", eq.worst,
       tolerance::scaled(tolerance::equivalence));

  // Criteria 9 and 10 each bundle sub-measurements with distinct tolerances;
  // the line reports whichever sub-measurement uses the largest fraction of
  // its own budget, so the printed pair is always the binding one.
  VariationalMeasures vm = criterion_variational(s);
  {
    std::vector<std::pair<double, double>> parts = {
        {vm.worst, tolerance::scaled(tolerance::variational)},
        {vm.e2, tolerance::scaled(tolerance::quadrature_second)},
        {vm.e4, tolerance::scaled(tolerance::quadrature_fourth)}};
    auto binding = parts[0];
    for (const auto& p : parts) {
      if (p.first / p.second > binding.first / binding.second) binding = p;
    }
    line(9, "variational derivative and mode quotients", binding.first, binding.second);
  }

  {
    std::vector<std::pair<double, double>> parts = {
        {criterion_heat_rate(), tolerance::scaled(tolerance::heat_rate)},
        {criterion_bending_frequency(), tolerance::scaled(tolerance::bending_freq)}};
    auto binding = parts[0];
    for (const auto& p : parts) {
      if (p.first / p.second > binding.first / binding.second) binding = p;
    }
    line(10, "physical decay and bending-frequency rates", binding.first, binding.second);
  }

  std::printf("%s\n", g_all_ok ? "all criteria pass" : "CRITERIA FAILED");
  return g_all_ok ? 0 : 1;
}
