#pragma once

#include <vector>

#include <Eigen/Dense>

#include "phs1d/descriptor.hpp"

namespace phs1d {

// One verified step of the energy ledger. All rate-like columns live at the
// step midpoint; dH_dt is the exact finite difference of the stored energy over
// the step, which for a quadratic form equals its derivative at the midpoint.
// residual is (dH_dt - boundary_power - boundary_energy_rate + dissipation)
// divided by max(|H|, |boundary_power|, |boundary_energy_rate|, |dissipation|, 1).
struct LedgerRow {
  double t = 0.0;
  double H = 0.0;
  double dH_dt = 0.0;
  double boundary_power = 0.0;
  double boundary_energy_rate = 0.0;
  double dissipation = 0.0;
  double residual = 0.0;
};

struct RunResult {
  std::vector<LedgerRow> ledger;
  Eigen::VectorXd final_state;
  double max_residual = 0.0;
  double dt = 0.0;
  int steps = 0;

  // Populated only when requested: states[i] is the state at times[i],
  // including the initial state.
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

// Implicit midpoint on the pencil restricted to the unfrozen degrees of
// freedom: (E/dt - A/2) z+ = (E/dt + A/2) z row- and column-restricted, with
// the frozen columns folded into a constant forcing term. Frozen entries never
// move, so their finite-difference rates vanish identically in the ledger.
RunResult run_midpoint(const PHDescriptor& d, const Eigen::VectorXd& z0, double dt, int steps,
                       bool record_states = false);

// Half a grid cell per unit of the fastest characteristic speed.
double default_dt(const PHDescriptor& d, double h);

}  // namespace phs1d
