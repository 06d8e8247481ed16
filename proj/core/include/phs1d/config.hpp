#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "phs1d/models.hpp"

namespace phs1d {

// One initial-condition profile placed in a single named field; every other
// field starts at zero and algebraically slaved fields are then filled in by
// the model's consistency map.
struct InitialSpec {
  std::string kind = "gaussian";  // zero | gaussian | single_mode
  std::string field;              // defaults to the first field of the model
  double amplitude = 1.0;
  double center = 0.5;
  double width = 0.1;
  int wavenumber = 1;
};

// Flat key = value scenario file, '#' starts a comment. Unknown keys are
// rejected by name.
struct ScenarioConfig {
  std::string model;           // dzektser | nanorod | timoshenko | euler_bernoulli
  std::string representation;  // explicit | implicit | explicit_dae | explicit_reduced
                               // | implicit_dae | implicit_reduced
  int n = 101;
  std::string mode = "free";   // free | clamped
  double dt = 0.0;             // 0 means the model's default step
  int steps = 200;
  InitialSpec initial;
  std::map<std::string, double> params;  // params.* entries, key without prefix
  std::string ledger_path;               // output.ledger, empty means no file
};

ScenarioConfig parse_scenario(const std::string& path);

// A fully assembled scenario: descriptor with certificates already checked,
// operators, initial state, and the resolved step parameters.
struct BuiltScenario {
  PHDescriptor desc;
  SbpOps sbp;
  Eigen::VectorXd z0;
  double dt = 0.0;
  int steps = 0;
};

BuiltScenario build_scenario(const ScenarioConfig& cfg);

}  // namespace phs1d
