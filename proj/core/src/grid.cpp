#include "phs1d/grid.hpp"

#include <string>

#include "phs1d/errors.hpp"

namespace phs1d {

Grid build_grid(int n, double a, double b) {
  if (n < 3) {
    throw ConfigError("grid needs at least 3 nodes, got " + std::to_string(n));
  }
  if (!(b > a)) {
    throw ConfigError("grid interval is empty: a = " + std::to_string(a) +
                      ", b = " + std::to_string(b));
  }
  Grid g;
  g.n = n;
  g.a = a;
  g.b = b;
  g.h = (b - a) / static_cast<double>(n - 1);
  g.x.resize(n);
  for (int i = 0; i < n; ++i) g.x[i] = a + g.h * static_cast<double>(i);
  g.x[n - 1] = b;
  g.w = Eigen::VectorXd::Constant(n, g.h);
  g.w[0] = 0.5 * g.h;
  g.w[n - 1] = 0.5 * g.h;
  return g;
}

}  // namespace phs1d
