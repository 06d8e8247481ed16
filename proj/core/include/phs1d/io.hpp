#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phs1d/integrator.hpp"

namespace phs1d {

// Shortest decimal form that parses back to the identical bits.
std::string format_double(double v);
double parse_double(const std::string& s);

// Labeled plain-text matrix file:
//   matrix <name> <rows> <cols>
//   <row of space-separated entries>
//   ...
// Entries use shortest-round-trip decimals, so write followed by read
// reproduces the matrix bit for bit.
struct NamedMatrix {
  std::string name;
  Eigen::MatrixXd m;
};

void write_matrix(const std::string& path, const std::string& name, const Eigen::MatrixXd& m);
NamedMatrix read_matrix(const std::string& path);

// Deterministic CSV with a fixed header line and one row per entry.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Ledger schema: t, H, dH_dt, boundary_power, boundary_energy_rate,
// dissipation, residual.
void write_ledger_csv(const std::string& path, const std::vector<LedgerRow>& rows);

}  // namespace phs1d
