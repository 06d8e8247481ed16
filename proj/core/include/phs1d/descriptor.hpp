#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phs1d/sbp.hpp"

namespace phs1d {

using PairingFn = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using StateFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Raw boundary samples. Every entry is a (left end, right end) pair; rates come
// from the supplied state rate, not from differentiating an interpolant.
struct PowerChannel {
  std::array<double, 2> flow{0.0, 0.0};
  std::array<double, 2> effort{0.0, 0.0};
};

// Boundary channel of the constitutive pair. Its flux contribution is
// [chi_rate * eps] when rate_on_chi holds, [chi * eps_rate] otherwise; which
// orientation makes the balance exact is a property of the model, not a choice.
struct EnergyChannel {
  std::array<double, 2> chi{0.0, 0.0};
  std::array<double, 2> eps{0.0, 0.0};
  std::array<double, 2> chi_rate{0.0, 0.0};
  std::array<double, 2> eps_rate{0.0, 0.0};
  bool rate_on_chi = true;
};

struct BoundaryPorts {
  std::vector<PowerChannel> power;
  std::vector<EnergyChannel> energy;

  // Telescoped sums, right end minus left end.
  double power_flux() const;
  double energy_flux() const;
};

// Energy split: total(z) = 0.5 z^T M z is the nonnegative Gram form actually
// used by the integrator and ledger; pairing_part is the constitutive-pair
// integral form and boundary_part the explicit boundary correction. The
// assembly check certifies pairing_part + boundary_part == total to roundoff,
// which is the discrete integration-by-parts consistency of the model.
struct HamiltonianForm {
  Eigen::MatrixXd M;
  ScalarFn pairing_part;
  ScalarFn boundary_part;

  double total(const Eigen::VectorXd& z) const { return 0.5 * z.dot(M * z); }
};

// One linear model in pencil form  E z' = A z  together with everything the
// integrator, ledger, and audits need. Closures evaluate at arbitrary states;
// clamped variants list frozen degrees of freedom which the time stepper holds
// constant while all energy and port evaluations still see the full state.
struct PHDescriptor {
  std::string name;
  int n = 0;

  Eigen::MatrixXd E;
  Eigen::MatrixXd A;
  HamiltonianForm ham;

  // Full effort vector (the co-state entering the structure operator).
  StateFn effort;

  // Ledger pieces, all evaluated at (state, state_rate).
  PairingFn boundary_power;
  PairingFn boundary_energy_rate;
  ScalarFn dissipation;                 // nonnegative rate, 0 for lossless models
  std::function<BoundaryPorts(const Eigen::VectorXd&, const Eigen::VectorXd&)> ports;

  StateFn consistent_init;              // fixes algebraically slaved fields
  std::vector<int> frozen;

  double wave_speed = 1.0;              // for the default step heuristic

  // Structural certificate data. Any piece may be absent (size 0 / empty fn);
  // the corresponding check is skipped.
  Eigen::MatrixXd Hblk;                 // norm matrix on the full state
  Eigen::MatrixXd Jop;                  // structure operator on the full state
  PairingFn j_pairing;                  // declared boundary pairing of Jop
  Eigen::MatrixXd Sop, Pop, Hsub;       // constitutive pair on a substate
  PairingFn lagrange_pairing;           // declared boundary pairing of (S, P)
  Eigen::MatrixXd Rquad;                // dissipation kernel, must be psd

  double hamiltonian(const Eigen::VectorXd& z) const { return ham.total(z); }
};

struct StructureReport {
  double j_skew = 0.0;          // worst |x^T(HJ + J^T H)y - declared| / scale
  double lagrange = 0.0;        // worst |<Sx,Py> - <Px,Sy> - declared| / scale
  double energy_split = 0.0;    // worst |pairing + boundary - total| / scale
  double r_min = 0.0;           // smallest eigenvalue of sym(Rquad), scaled
  double m_min = 0.0;           // smallest eigenvalue of sym(M), scaled
  double worst = 0.0;
  bool ok = false;
};

// Runs every applicable certificate on random states. Never throws.
StructureReport check_structure(const PHDescriptor& d, int n_samples, unsigned seed,
                                double tolerance);

// check_structure with the assembly tolerance; throws StructureError on failure.
void assemble(PHDescriptor& d, unsigned seed = 0x5bb1u);

// Evaluates the effort map, throwing SolverError if the model has none.
Eigen::VectorXd eval_effort(const PHDescriptor& d, const Eigen::VectorXd& z);

// Boundary ports at (state, rate); requires the ports closure.
BoundaryPorts read_boundary_ports(const PHDescriptor& d, const Eigen::VectorXd& z,
                                  const Eigen::VectorXd& state_rate);

}  // namespace phs1d
