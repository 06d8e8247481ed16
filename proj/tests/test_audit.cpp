#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include <phs1d/audit.hpp>
#include <phs1d/errors.hpp>
#include <phs1d/grid.hpp>
#include <phs1d/integrator.hpp>
#include <phs1d/models.hpp>
#include <phs1d/sbp.hpp>
#include <phs1d/tolerances.hpp>

using namespace phs1d;
using Eigen::VectorXd;

namespace {

VectorXd gaussian_profile(const Grid& g, double c, double wdt, double amp) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - c) / wdt;
    v[i] = amp * std::exp(-0.5 * r * r);
  }
  return v;
}

std::vector<std::pair<std::string, PHDescriptor>> all_free_models(const SbpOps& s) {
  DzektserParams dz;
  NanorodParams nr;
  BeamParams bm;
  std::vector<std::pair<std::string, PHDescriptor>> out;
  out.emplace_back("dzektser", dzektser_explicit(s, dz, Mode::free_ends));
  out.emplace_back("nanorod_explicit", nanorod_explicit(s, nr, Mode::free_ends));
  out.emplace_back("nanorod_implicit", nanorod_implicit(s, nr, Mode::free_ends));
  out.emplace_back("timoshenko_explicit", timoshenko_explicit(s, bm, Mode::free_ends));
  out.emplace_back("timoshenko_implicit", timoshenko_implicit(s, bm, Mode::free_ends));
  out.emplace_back("eb_explicit_dae", eb_explicit_dae(s, bm, Mode::free_ends));
  out.emplace_back("eb_explicit_reduced", eb_explicit_reduced(s, bm, Mode::free_ends));
  out.emplace_back("eb_implicit_dae", eb_implicit_dae(s, bm, Mode::free_ends));
  out.emplace_back("eb_implicit_reduced", eb_implicit_reduced(s, bm, Mode::free_ends));
  return out;
}

}  // namespace

TEST(Audit, VariationalDerivativeMatchesGradientForAllModels) {
  SbpOps s = build_sbp(build_grid(61));
  for (auto& [label, d] : all_free_models(s)) {
    VariationalReport r = variational_check(d, 50, 0x5bb1u, 1e-4,
                                            tolerance::scaled(tolerance::variational));
    EXPECT_TRUE(r.ok) << label << " worst " << r.worst;
    EXPECT_LE(r.worst, 1e-9) << label;
  }
}

TEST(Audit, RederivedBalanceMatchesLedger) {
  SbpOps s = build_sbp(build_grid(101));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  BalanceTerms terms = dzektser_power_balance_terms(s, p);
  VectorXd z0 = gaussian_profile(s.grid, 0.45, 0.12, 1.0);
  BalanceAudit a =
      rederive_balance(d, &terms, z0, 1e-3, 50, tolerance::scaled(tolerance::runtime));
  EXPECT_TRUE(a.ok);
  EXPECT_LE(a.ledger_vs_ports, 1e-13);
  EXPECT_LE(a.decomposition, 1e-10);
}

TEST(Audit, PortsAuditCoversEveryModel) {
  SbpOps s = build_sbp(build_grid(61));
  for (auto& [label, d] : all_free_models(s)) {
    const int nb = d.n / static_cast<int>(field_names(d.name).size());
    VectorXd z0 = VectorXd::Zero(d.n);
    z0.segment(0, nb) = gaussian_profile(s.grid, 0.5, 0.12, 1.0);
    if (d.n > nb) z0.segment(nb, nb) = gaussian_profile(s.grid, 0.4, 0.1, 0.5);
    if (d.consistent_init) z0 = d.consistent_init(z0);
    BalanceAudit a =
        rederive_balance(d, nullptr, z0, 1e-3, 25, tolerance::scaled(tolerance::runtime));
    EXPECT_TRUE(a.ok) << label << " worst " << a.worst;
    EXPECT_LE(a.ledger_vs_ports, 1e-12) << label;
  }
}

// A tampered port table must be caught: dropping a channel or flipping a sign
// leaves a finite mismatch against the closed-form fluxes.
TEST(Audit, DetectsTamperedPorts) {
  SbpOps s = build_sbp(build_grid(61));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  VectorXd z0 = gaussian_profile(s.grid, 0.45, 0.12, 1.0);

  PHDescriptor dropped = d;
  auto inner = d.ports;
  dropped.ports = [inner](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts b = inner(z, rate);
    b.power.pop_back();
    return b;
  };
  BalanceAudit a =
      rederive_balance(dropped, nullptr, z0, 1e-3, 10, tolerance::scaled(tolerance::runtime));
  EXPECT_FALSE(a.ok);
  EXPECT_GT(a.ledger_vs_ports, 1e-6);

  PHDescriptor flipped = d;
  flipped.ports = [inner](const VectorXd& z, const VectorXd& rate) {
    BoundaryPorts b = inner(z, rate);
    for (auto& ch : b.energy) {
      ch.eps[0] = -ch.eps[0];
      ch.eps[1] = -ch.eps[1];
      ch.eps_rate[0] = -ch.eps_rate[0];
      ch.eps_rate[1] = -ch.eps_rate[1];
    }
    return b;
  };
  a = rederive_balance(flipped, nullptr, z0, 1e-3, 10, tolerance::scaled(tolerance::runtime));
  EXPECT_FALSE(a.ok);
  EXPECT_GT(a.ledger_vs_ports, 1e-6);
}

TEST(Audit, VariationalRequiresStoredEnergy) {
  SbpOps s = build_sbp(build_grid(41));
  DzektserParams p;
  PHDescriptor d = dzektser_explicit(s, p, Mode::free_ends);
  d.ham.M.resize(0, 0);
  EXPECT_THROW(variational_check(d, 3, 1u, 1e-4, 1e-8), ConfigError);
}
