#pragma once

#include <Eigen/Dense>

namespace phs1d {

// Uniform grid on [a, b]. w holds the quadrature weights of the diagonal norm:
// h at interior nodes, h/2 at the two ends, so sum(w) = b - a exactly up to
// one rounding of h * (n - 1).
struct Grid {
  int n = 0;
  double a = 0.0;
  double b = 1.0;
  double h = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd w;
};

Grid build_grid(int n, double a = 0.0, double b = 1.0);

}  // namespace phs1d
