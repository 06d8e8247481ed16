#pragma once

#include <Eigen/Dense>

#include "phs1d/models.hpp"

namespace phs1d {

// Central-difference check of the discrete variational derivative: for
// directions supported away from the boundary closure rows, the two-sided
// difference of the stored energy must match the pairing with the gradient of
// its quadratic form. Exact for quadratic energies up to roundoff divided by
// the step, so eta trades truncation (none here) against cancellation.
struct VariationalReport {
  double worst = 0.0;
  bool ok = false;
};

VariationalReport variational_check(const PHDescriptor& d, int n_dirs, unsigned seed, double eta,
                                    double tolerance);

// Recomputes every ledger flux along a trajectory through the raw boundary
// port samples instead of the model's closed-form expressions, and, when a
// named decomposition is supplied, checks that its columns sum to the exact
// energy difference quotient.
struct BalanceAudit {
  double ledger_vs_ports = 0.0;
  double decomposition = 0.0;
  double worst = 0.0;
  bool ok = false;
};

BalanceAudit rederive_balance(const PHDescriptor& d, const BalanceTerms* terms,
                              const Eigen::VectorXd& z0, double dt, int steps, double tolerance);

}  // namespace phs1d
