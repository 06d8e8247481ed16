#include "phs1d/tolerances.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "phs1d/errors.hpp"

namespace phs1d::tolerance {

static double read_scale() {
  const char* env = std::getenv("PHS1D_TOL_SCALE");
  if (env == nullptr || *env == '\0') return 1.0;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw ConfigError(std::string("PHS1D_TOL_SCALE must be a positive number, got '") + env + "'");
  }
  return v;
}

double scale() {
  static const double cached = read_scale();
  return cached;
}

}  // namespace phs1d::tolerance
