#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include <phs1d/errors.hpp>
#include <phs1d/grid.hpp>
#include <phs1d/integrator.hpp>
#include <phs1d/models.hpp>
#include <phs1d/sbp.hpp>
#include <phs1d/tolerances.hpp>

using namespace phs1d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Case {
  std::string label;
  PHDescriptor d;
  double ledger_bound;
};

VectorXd gaussian_profile(const Grid& g, double c, double wdt, double amp) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - c) / wdt;
    v[i] = amp * std::exp(-0.5 * r * r);
  }
  return v;
}

// Off-center pulses with nonzero boundary traffic; slaved fields filled in by
// the model. Ledger bounds are frozen at 20x the observed residuals, far under
// the certification threshold.
std::vector<Case> model_cases(const SbpOps& s, Mode mode) {
  DzektserParams dz;
  NanorodParams nr;
  BeamParams bm;
  std::vector<Case> out;
  out.push_back({"dzektser", dzektser_explicit(s, dz, mode), 5e-10});
  out.push_back({"nanorod_explicit", nanorod_explicit(s, nr, mode), 1e-11});
  out.push_back({"nanorod_implicit", nanorod_implicit(s, nr, mode), 5e-11});
  out.push_back({"timoshenko_explicit", timoshenko_explicit(s, bm, mode), 5e-12});
  out.push_back({"timoshenko_implicit", timoshenko_implicit(s, bm, mode), 5e-11});
  out.push_back({"eb_explicit_dae", eb_explicit_dae(s, bm, mode), 5e-12});
  out.push_back({"eb_explicit_reduced", eb_explicit_reduced(s, bm, mode), 5e-12});
  out.push_back({"eb_implicit_dae", eb_implicit_dae(s, bm, mode), 5e-10});
  out.push_back({"eb_implicit_reduced", eb_implicit_reduced(s, bm, mode), 1e-8});
  return out;
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

}  // namespace

TEST(Models, AllAssembleWithCertificates) {
  SbpOps s = build_sbp(build_grid(61));
  for (auto& c : model_cases(s, Mode::free_ends)) {
    EXPECT_NO_THROW(assemble(c.d)) << c.label;
    const auto fields = field_names(c.d.name);
    ASSERT_GT(fields.size(), 0u) << c.label;
    EXPECT_EQ(c.d.n % static_cast<int>(fields.size()), 0) << c.label;
  }
}

TEST(Models, FrozenIndicesAreValidAndDistinct) {
  SbpOps s = build_sbp(build_grid(41));
  for (auto& c : model_cases(s, Mode::clamped)) {
    std::set<int> seen;
    for (int idx : c.d.frozen) {
      EXPECT_GE(idx, 0) << c.label;
      EXPECT_LT(idx, c.d.n) << c.label;
      EXPECT_TRUE(seen.insert(idx).second) << c.label << " repeats " << idx;
    }
    EXPECT_FALSE(c.d.frozen.empty()) << c.label;
  }
}

TEST(Models, FreeLedgersAreExact) {
  SbpOps s = build_sbp(build_grid(101));
  for (auto& c : model_cases(s, Mode::free_ends)) {
    VectorXd z0 = seeded_state(c.d, s.grid);
    RunResult r = run_midpoint(c.d, z0, 1e-3, 200, false);
    EXPECT_LE(r.max_residual, tolerance::scaled(c.ledger_bound)) << c.label;
  }
}

TEST(Models, ClampedDissipativeDecayIsMonotone) {
  SbpOps s = build_sbp(build_grid(101));
  DzektserParams dz;
  NanorodParams nr;
  std::vector<std::pair<std::string, PHDescriptor>> cases;
  cases.emplace_back("dzektser", dzektser_explicit(s, dz, Mode::clamped));
  cases.emplace_back("nanorod_explicit", nanorod_explicit(s, nr, Mode::clamped));
  cases.emplace_back("nanorod_implicit", nanorod_implicit(s, nr, Mode::clamped));
  for (auto& [label, d] : cases) {
    VectorXd z0 = seeded_state(d, s.grid);
    RunResult r = run_midpoint(d, z0, 1e-3, 400, true);
    const double h0 = d.hamiltonian(z0);
    double prev = h0;
    double worst_rise = 0.0;
    for (size_t k = 1; k < r.states.size(); ++k) {
      const double h = d.hamiltonian(r.states[k]);
      worst_rise = std::max(worst_rise, h - prev);
      prev = h;
    }
    EXPECT_LE(worst_rise, tolerance::scaled(tolerance::decay) * h0) << label;
    EXPECT_LT(d.hamiltonian(r.final_state), h0) << label;
  }
}

TEST(Models, ClampedBeamsConserveEnergy) {
  SbpOps s = build_sbp(build_grid(101));
  BeamParams bm;
  std::vector<std::pair<std::string, PHDescriptor>> cases;
  cases.emplace_back("timoshenko_explicit", timoshenko_explicit(s, bm, Mode::clamped));
  cases.emplace_back("timoshenko_implicit", timoshenko_implicit(s, bm, Mode::clamped));
  cases.emplace_back("eb_explicit_dae", eb_explicit_dae(s, bm, Mode::clamped));
  cases.emplace_back("eb_explicit_reduced", eb_explicit_reduced(s, bm, Mode::clamped));
  cases.emplace_back("eb_implicit_dae", eb_implicit_dae(s, bm, Mode::clamped));
  cases.emplace_back("eb_implicit_reduced", eb_implicit_reduced(s, bm, Mode::clamped));
  for (auto& [label, d] : cases) {
    VectorXd z0 = seeded_state(d, s.grid);
    RunResult r = run_midpoint(d, z0, 1e-3, 400, true);
    const double h0 = d.hamiltonian(z0);
    ASSERT_GT(h0, 0.0) << label;
    for (const auto& zk : r.states) {
      EXPECT_LE(std::abs(d.hamiltonian(zk) - h0) / h0, tolerance::scaled(tolerance::conservation))
          << label;
    }
  }
}

// Stored energy of one sine mode against the closed-form integral.
TEST(Models, SeepageHamiltonianOracle) {
  SbpOps s = build_sbp(build_grid(401));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  VectorXd hh(401);
  for (int i = 0; i < 401; ++i) hh[i] = std::sin(std::numbers::pi * s.grid.x[i]);
  const double target = 0.25 + 0.0025 * std::numbers::pi * std::numbers::pi;
  EXPECT_NEAR(d.hamiltonian(hh), target, 1e-5);
}

// Dissipation functional of one sine mode: alpha pi^2 / 2 + beta pi^4 / 2.
TEST(Models, SeepageDissipationOracle) {
  SbpOps s = build_sbp(build_grid(401));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  VectorXd hh(401);
  for (int i = 0; i < 401; ++i) hh[i] = std::sin(std::numbers::pi * s.grid.x[i]);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double target = 0.5 * pi2 + 0.5 * pi2 * pi2;
  EXPECT_LE(std::abs(d.dissipation(hh) - target) / target, 1e-3);
}

// Clamped relaxation solve reproduces the sine eigenpair of the continuum
// operator (Id - mu dxx)^-1.
TEST(Models, RelaxationSolveOracle) {
  SbpOps s = build_sbp(build_grid(401));
  const int n = 401;
  const double mu = 0.01;
  MatrixXd L = MatrixXd::Identity(n, n) - mu * s.d1 * s.d1;
  L.row(0).setZero();
  L(0, 0) = 1.0;
  L.row(n - 1).setZero();
  L(n - 1, n - 1) = 1.0;
  VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::sin(std::numbers::pi * s.grid.x[i]);
  rhs[0] = rhs[n - 1] = 0.0;
  VectorXd sig = L.partialPivLu().solve(rhs);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(sig[i] - rhs[i] / (1.0 + mu * pi2)));
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(Models, SeepageBalanceTermsSumToEnergyRate) {
  SbpOps s = build_sbp(build_grid(101));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  BalanceTerms terms = dzektser_power_balance_terms(s, p);
  ASSERT_EQ(terms.names.size(), terms.columns.size());
  ASSERT_GE(terms.names.size(), 3u);

  VectorXd z0 = gaussian_profile(s.grid, 0.45, 0.12, 1.0);
  RunResult r = run_midpoint(d, z0, 1e-3, 50, true);
  for (int k = 0; k < 50; ++k) {
    VectorXd zm = 0.5 * (r.states[k] + r.states[k + 1]);
    VectorXd rate = (r.states[k + 1] - r.states[k]) / 1e-3;
    double total = 0.0;
    for (const auto& col : terms.columns) total += col(zm, rate);
    const double dh = (d.hamiltonian(r.states[k + 1]) - d.hamiltonian(r.states[k])) / 1e-3;
    EXPECT_LE(std::abs(total - dh) / std::max(1.0, std::abs(dh)), 1e-10);
  }
}

TEST(Models, NanorodStiffnessOverrideKeepsLedgerExact) {
  SbpOps s = build_sbp(build_grid(101));
  NanorodParams p;
  p.t_ea = 2.0;
  p.b_damp = 0.0;
  PHDescriptor d = nanorod_explicit(s, p, Mode::free_ends);
  assemble(d);
  VectorXd z0 = seeded_state(d, s.grid);
  RunResult r = run_midpoint(d, z0, 1e-3, 200, false);
  EXPECT_LE(r.max_residual, tolerance::scaled(1e-10));
}

TEST(Models, ParameterValidation) {
  SbpOps s = build_sbp(build_grid(21));
  DzektserParams dz;
  dz.alpha_s = -1.0;
  EXPECT_THROW(dzektser_explicit(s, dz, Mode::free_ends), ConfigError);
  NanorodParams nr;
  nr.tau_d = 0.0;
  EXPECT_THROW(nanorod_implicit(s, nr, Mode::free_ends), ConfigError);
  EXPECT_THROW(nanorod_explicit(s, nr, Mode::free_ends), ConfigError);
  BeamParams bm;
  bm.rho = 0.0;
  EXPECT_THROW(timoshenko_explicit(s, bm, Mode::free_ends), ConfigError);
  EXPECT_THROW(eb_implicit_reduced(s, bm, Mode::free_ends), ConfigError);
}

TEST(Models, FieldNamesRejectUnknownModel) {
  EXPECT_THROW(field_names("unknown"), ConfigError);
  EXPECT_EQ(field_names("dzektser_explicit").size(), 1u);
  EXPECT_EQ(field_names("timoshenko_explicit").size(), 5u);
  EXPECT_EQ(field_names("eb_implicit_reduced").size(), 2u);
}
