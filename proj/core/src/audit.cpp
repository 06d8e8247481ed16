#include "phs1d/audit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phs1d/errors.hpp"
#include "phs1d/integrator.hpp"

namespace phs1d {

using Eigen::VectorXd;

VariationalReport variational_check(const PHDescriptor& d, int n_dirs, unsigned seed, double eta,
                                    double tolerance) {
  if (d.ham.M.size() == 0) throw ConfigError("model has no stored-energy form");
  const int n_total = d.n;
  // Boundary closure rows occupy two nodes at each end of every field block;
  // the block size is the largest divisor pattern we support, recovered from
  // the model by its field count.
  const int n_fields = static_cast<int>(field_names(d.name).size());
  const int nb = n_total / n_fields;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  VectorXd z(n_total);
  for (int i = 0; i < n_total; ++i) z[i] = gauss(rng);

  VariationalReport rep;
  VectorXd grad = d.ham.M * z;
  for (int dir = 0; dir < n_dirs; ++dir) {
    VectorXd delta = VectorXd::Zero(n_total);
    for (int f = 0; f < n_fields; ++f) {
      for (int i = f * nb + 2; i < (f + 1) * nb - 2; ++i) delta[i] = gauss(rng);
    }
    const double plus = d.hamiltonian(z + eta * delta);
    const double minus = d.hamiltonian(z - eta * delta);
    const double cd = (plus - minus) / (2.0 * eta);
    const double ip = delta.dot(grad);
    rep.worst = std::max(rep.worst, std::abs(cd - ip) / std::max(1.0, std::abs(ip)));
  }
  rep.ok = rep.worst <= tolerance;
  return rep;
}

BalanceAudit rederive_balance(const PHDescriptor& d, const BalanceTerms* terms,
                              const VectorXd& z0, double dt, int steps, double tolerance) {
  RunResult run = run_midpoint(d, z0, dt, steps, true);

  BalanceAudit audit;
  for (int k = 0; k < steps; ++k) {
    const VectorXd& z = run.states[static_cast<size_t>(k)];
    const VectorXd& z1 = run.states[static_cast<size_t>(k) + 1];
    VectorXd zm = 0.5 * (z + z1);
    VectorXd rate = (z1 - z) / dt;

    const double primary = (d.boundary_power ? d.boundary_power(zm, rate) : 0.0) +
                           (d.boundary_energy_rate ? d.boundary_energy_rate(zm, rate) : 0.0);
    BoundaryPorts ports = read_boundary_ports(d, zm, rate);
    const double replayed = ports.power_flux() + ports.energy_flux();
    const double scale = std::max({1.0, std::abs(primary), std::abs(replayed)});
    audit.ledger_vs_ports =
        std::max(audit.ledger_vs_ports, std::abs(primary - replayed) / scale);

    if (terms != nullptr) {
      double total = 0.0;
      for (const auto& col : terms->columns) total += col(zm, rate);
      const double dh = (d.hamiltonian(z1) - d.hamiltonian(z)) / dt;
      const double dscale = std::max({1.0, std::abs(dh), std::abs(total)});
      audit.decomposition = std::max(audit.decomposition, std::abs(total - dh) / dscale);
    }
  }

  audit.worst = std::max(audit.ledger_vs_ports, audit.decomposition);
  audit.ok = audit.worst <= tolerance;
  return audit;
}

}  // namespace phs1d
