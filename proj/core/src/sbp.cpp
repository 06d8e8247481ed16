#include "phs1d/sbp.hpp"

#include <string>
#include <vector>

#include "phs1d/errors.hpp"

namespace phs1d {

SbpOps build_sbp(const Grid& g) {
  SbpOps s;
  s.grid = g;
  const int n = g.n;
  const double h = g.h;
  s.d1 = Eigen::MatrixXd::Zero(n, n);
  s.d1(0, 0) = -1.0 / h;
  s.d1(0, 1) = 1.0 / h;
  for (int i = 1; i < n - 1; ++i) {
    s.d1(i, i - 1) = -0.5 / h;
    s.d1(i, i + 1) = 0.5 / h;
  }
  s.d1(n - 1, n - 2) = -1.0 / h;
  s.d1(n - 1, n - 1) = 1.0 / h;
  return s;
}

double inner(const SbpOps& s, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return u.dot(s.grid.w.cwiseProduct(v));
}

Eigen::MatrixXd compose_power(const SbpOps& s, int k) {
  if (k < 0 || k > 4) {
    throw ConfigError("derivative order must lie in [0, 4], got " + std::to_string(k));
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(s.grid.n, s.grid.n);
  for (int i = 0; i < k; ++i) p = s.d1 * p;
  return p;
}

Eigen::MatrixXd formal_adjoint_power(const SbpOps& s, int k) {
  Eigen::MatrixXd p = compose_power(s, k);
  return (k % 2 == 0) ? p : Eigen::MatrixXd(-p);
}

double boundary_pairing(const SbpOps& s, int k, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v) {
  if (k < 1 || k > 4) {
    throw ConfigError("boundary pairing order must lie in [1, 4], got " + std::to_string(k));
  }
  // Cache D1^j u and D1^j v for j = 0..k-1.
  std::vector<Eigen::VectorXd> du(k), dv(k);
  du[0] = u;
  dv[0] = v;
  for (int j = 1; j < k; ++j) {
    du[j] = s.d1 * du[j - 1];
    dv[j] = s.d1 * dv[j - 1];
  }
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 0; j < k; ++j) {
    acc += sign * boundary_term(du[k - 1 - j], dv[j]);
    sign = -sign;
  }
  return acc;
}

double green_residual(const SbpOps& s, int k, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) {
  Eigen::MatrixXd K = compose_power(s, k);
  const double lhs = inner(s, K * u, v);
  const double rhs = inner(s, u, K * v);
  const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
  return lhs - sgn * rhs - boundary_pairing(s, k, u, v);
}

}  // namespace phs1d
