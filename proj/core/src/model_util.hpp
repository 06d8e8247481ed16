#pragma once

#include <Eigen/Dense>

namespace phs1d::detail {

inline void set_block(Eigen::MatrixXd& m, int nb, int i, int j, const Eigen::MatrixXd& blk) {
  m.block(i * nb, j * nb, nb, nb) = blk;
}

inline Eigen::VectorXd seg(const Eigen::VectorXd& z, int nb, int i) {
  return z.segment(i * nb, nb);
}

inline std::array<double, 2> ends(const Eigen::VectorXd& v) {
  return {v[0], v[v.size() - 1]};
}

}  // namespace phs1d::detail
