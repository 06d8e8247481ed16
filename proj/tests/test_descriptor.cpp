#include <gtest/gtest.h>

#include <phs1d/errors.hpp>
#include <phs1d/grid.hpp>
#include <phs1d/models.hpp>
#include <phs1d/sbp.hpp>

using namespace phs1d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(Ports, PowerFluxTelescopesRightMinusLeft) {
  BoundaryPorts bp;
  bp.power.push_back(PowerChannel{{2.0, 3.0}, {5.0, 7.0}});
  bp.power.push_back(PowerChannel{{1.0, 1.0}, {1.0, -1.0}});
  // (3*7 - 2*5) + (1*(-1) - 1*1)
  EXPECT_EQ(bp.power_flux(), 11.0 - 2.0);
  EXPECT_EQ(bp.energy_flux(), 0.0);
}

TEST(Ports, EnergyFluxOrientation) {
  EnergyChannel rate_first;
  rate_first.chi_rate = {2.0, 3.0};
  rate_first.eps = {5.0, 7.0};
  rate_first.rate_on_chi = true;

  EnergyChannel state_first;
  state_first.chi = {2.0, 3.0};
  state_first.eps_rate = {5.0, 7.0};
  state_first.rate_on_chi = false;

  BoundaryPorts bp;
  bp.energy = {rate_first, state_first};
  EXPECT_EQ(bp.energy_flux(), (3.0 * 7.0 - 2.0 * 5.0) * 2);
}

TEST(Structure, HealthyModelPasses) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = timoshenko_explicit(s, BeamParams{}, Mode::free_ends);
  StructureReport rep = check_structure(d, 8, 77u, 1e-11);
  EXPECT_TRUE(rep.ok);
  EXPECT_LE(rep.worst, 1e-12);
}

TEST(Structure, DetectsBrokenSkewness) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = timoshenko_explicit(s, BeamParams{}, Mode::free_ends);
  d.Jop(0, 41) += 1e-3;
  StructureReport rep = check_structure(d, 8, 77u, 1e-11);
  EXPECT_FALSE(rep.ok);
  EXPECT_GT(rep.j_skew, 1e-7);
}

TEST(Structure, DetectsBrokenEnergySplit) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = timoshenko_implicit(s, BeamParams{}, Mode::free_ends);
  auto old = d.ham.boundary_part;
  d.ham.boundary_part = [old](const VectorXd& z) { return old(z) + 1e-4; };
  StructureReport rep = check_structure(d, 8, 77u, 1e-11);
  EXPECT_FALSE(rep.ok);
  EXPECT_GT(rep.energy_split, 1e-7);
}

TEST(Structure, DetectsBrokenLagrangePairing) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = dzektser_explicit(s, DzektserParams{}, Mode::free_ends);
  auto old = d.lagrange_pairing;
  d.lagrange_pairing = [old](const VectorXd& x, const VectorXd& y) { return -old(x, y); };
  StructureReport rep = check_structure(d, 8, 77u, 1e-11);
  EXPECT_FALSE(rep.ok);
}

TEST(Structure, DetectsIndefiniteDissipationKernel) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = dzektser_explicit(s, DzektserParams{}, Mode::free_ends);
  d.Rquad = -MatrixXd::Identity(41, 41);
  StructureReport rep = check_structure(d, 8, 77u, 1e-11);
  EXPECT_FALSE(rep.ok);
  EXPECT_LT(rep.r_min, -1e-3);
}

TEST(Structure, AssembleThrowsOnCorruptedModel) {
  SbpOps s = build_sbp(build_grid(41));
  PHDescriptor d = timoshenko_explicit(s, BeamParams{}, Mode::free_ends);
  d.Jop(0, 41) += 1e-3;
  EXPECT_THROW(assemble(d), StructureError);
  PHDescriptor ok = timoshenko_explicit(s, BeamParams{}, Mode::free_ends);
  EXPECT_NO_THROW(assemble(ok));
}

TEST(Descriptor, EffortAndPortsRequireClosures) {
  PHDescriptor d;
  d.name = "empty";
  d.n = 2;
  EXPECT_THROW(eval_effort(d, VectorXd::Zero(2)), SolverError);
  EXPECT_THROW(read_boundary_ports(d, VectorXd::Zero(2), VectorXd::Zero(2)), SolverError);
}
