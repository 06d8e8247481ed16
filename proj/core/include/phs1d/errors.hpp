#pragma once

#include <stdexcept>
#include <string>

namespace phs1d {

// Invalid scenario, grid, or model configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime linear-algebra failure: singular pencil, non-finite state, refinement
// that does not converge. Exit code 3.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural invariant failed at assembly time (skewness, Lagrange symmetry,
// positivity). Exit code 3.
class StructureError : public std::runtime_error {
public:
  explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

// File read or write failure. Exit code 4.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace phs1d
