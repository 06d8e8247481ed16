#include "phs1d/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "phs1d/errors.hpp"
#include "phs1d/tolerances.hpp"

namespace phs1d {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double default_dt(const PHDescriptor& d, double h) {
  if (d.wave_speed <= 0.0) throw ConfigError("model wave speed must be positive");
  return 0.5 * h / d.wave_speed;
}

RunResult run_midpoint(const PHDescriptor& d, const VectorXd& z0, double dt, int steps,
                       bool record_states) {
  if (z0.size() != d.n) throw ConfigError("initial state size does not match the model");
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (steps < 1) throw ConfigError("step count must be at least 1");

  std::vector<char> is_frozen(static_cast<size_t>(d.n), 0);
  for (int idx : d.frozen) {
    if (idx < 0 || idx >= d.n) throw ConfigError("frozen index out of range");
    is_frozen[static_cast<size_t>(idx)] = 1;
  }
  std::vector<int> kept;
  kept.reserve(static_cast<size_t>(d.n));
  for (int i = 0; i < d.n; ++i) {
    if (!is_frozen[static_cast<size_t>(i)]) kept.push_back(i);
  }
  const int nk = static_cast<int>(kept.size());
  if (nk == 0) throw ConfigError("every degree of freedom is frozen");

  MatrixXd L(nk, nk), R(nk, nk);
  for (int j = 0; j < nk; ++j) {
    for (int i = 0; i < nk; ++i) {
      const double e = d.E(kept[i], kept[j]);
      const double a = d.A(kept[i], kept[j]);
      L(i, j) = e / dt - 0.5 * a;
      R(i, j) = e / dt + 0.5 * a;
    }
  }
  // Constant forcing from the held boundary values: the E/dt parts cancel
  // between the two sides, leaving the A columns applied to the frozen state.
  VectorXd forcing = VectorXd::Zero(nk);
  for (int idx : d.frozen) {
    const double zf = z0[idx];
    if (zf == 0.0) continue;
    for (int i = 0; i < nk; ++i) forcing[i] += d.A(kept[i], idx) * zf;
  }

  Eigen::PartialPivLU<MatrixXd> lu(L);
  if (lu.rcond() <= 1e-14) {
    throw SolverError("midpoint pencil is numerically singular for model " + d.name);
  }
  const double l_norm = L.cwiseAbs().rowwise().sum().maxCoeff();

  RunResult out;
  out.dt = dt;
  out.steps = steps;
  out.ledger.reserve(static_cast<size_t>(steps));
  if (record_states) {
    out.times.reserve(static_cast<size_t>(steps) + 1);
    out.states.reserve(static_cast<size_t>(steps) + 1);
    out.times.push_back(0.0);
    out.states.push_back(z0);
  }

  VectorXd z = z0;
  VectorXd zk(nk), rhs(nk), znext = z0, zm(d.n), rate(d.n);
  double h_prev = d.hamiltonian(z);

  for (int step = 0; step < steps; ++step) {
    for (int i = 0; i < nk; ++i) zk[i] = z[kept[i]];
    rhs.noalias() = R * zk;
    rhs += forcing;
    VectorXd x = lu.solve(rhs);
    VectorXd resid = rhs - L * x;
    x += lu.solve(resid);
    if (!x.allFinite()) {
      throw SolverError("midpoint solve produced non-finite state for model " + d.name);
    }
    resid.noalias() = rhs - L * x;
    const double backward =
        resid.cwiseAbs().maxCoeff() /
        (l_norm * x.cwiseAbs().maxCoeff() + rhs.cwiseAbs().maxCoeff() + 1e-300);
    if (backward > tolerance::scaled(tolerance::runtime)) {
      throw SolverError("midpoint solve lost accuracy for model " + d.name);
    }

    for (int i = 0; i < nk; ++i) znext[kept[i]] = x[i];
    zm = 0.5 * (z + znext);
    rate = (znext - z) / dt;

    const double h_next = d.hamiltonian(znext);
    LedgerRow row;
    row.t = (static_cast<double>(step) + 0.5) * dt;
    row.H = d.hamiltonian(zm);
    row.dH_dt = (h_next - h_prev) / dt;
    row.boundary_power = d.boundary_power ? d.boundary_power(zm, rate) : 0.0;
    row.boundary_energy_rate = d.boundary_energy_rate ? d.boundary_energy_rate(zm, rate) : 0.0;
    row.dissipation = d.dissipation ? d.dissipation(zm) : 0.0;
    const double scale = std::max({std::abs(row.H), std::abs(row.boundary_power),
                                   std::abs(row.boundary_energy_rate),
                                   std::abs(row.dissipation), 1.0});
    row.residual =
        (row.dH_dt - row.boundary_power - row.boundary_energy_rate + row.dissipation) / scale;
    out.ledger.push_back(row);
    out.max_residual = std::max(out.max_residual, std::abs(row.residual));

    z.swap(znext);
    h_prev = h_next;
    if (record_states) {
      out.times.push_back(static_cast<double>(step + 1) * dt);
      out.states.push_back(z);
    }
  }

  out.final_state = z;
  return out;
}

}  // namespace phs1d
