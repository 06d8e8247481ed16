#pragma once

#include <Eigen/Dense>

#include "phs1d/grid.hpp"

namespace phs1d {

// First-derivative summation-by-parts operator on the diagonal norm H = diag(w).
// With Q = H D1, the matrix Q + Q^T equals diag(-1, 0, ..., 0, 1) exactly in
// floating point: every off-diagonal entry cancels as q - q. All higher
// derivatives used by the models are wide compositions D1^k of this one matrix,
// never separate narrow-stencil operators, so repeated summation by parts
// telescopes without remainder.
struct SbpOps {
  Grid grid;
  Eigen::MatrixXd d1;
};

SbpOps build_sbp(const Grid& g);

// u(b) v(b) - u(a) v(a) from nodal values.
inline double boundary_term(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const auto n = u.size();
  return u[n - 1] * v[n - 1] - u[0] * v[0];
}

// H-weighted inner product.
double inner(const SbpOps& s, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// D1^k for 0 <= k <= 4. k = 0 is the identity.
Eigen::MatrixXd compose_power(const SbpOps& s, int k);

// Formal adjoint of D1^k under the H inner product modulo boundary terms:
// (-1)^k D1^k. This is an operator identity, not a matrix transpose; the
// boundary remainder is exactly the pairing below.
Eigen::MatrixXd formal_adjoint_power(const SbpOps& s, int k);

// Telescoped boundary pairing of order k:
//   bp_k(u, v) = sum_{j=0}^{k-1} (-1)^j [ (D1^{k-1-j} u) (D1^j v) ]_a^b
// satisfying <D1^k u, v>_H - (-1)^k <u, D1^k v>_H = bp_k(u, v) exactly in
// infinite precision and to machine roundoff in floating point.
double boundary_pairing(const SbpOps& s, int k, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v);

// <D1^k u, v>_H - (-1)^k <u, D1^k v>_H - bp_k(u, v).
double green_residual(const SbpOps& s, int k, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v);

}  // namespace phs1d
