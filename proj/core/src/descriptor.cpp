#include "phs1d/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "phs1d/errors.hpp"
#include "phs1d/tolerances.hpp"

namespace phs1d {

double BoundaryPorts::power_flux() const {
  double acc = 0.0;
  for (const auto& c : power) acc += c.flow[1] * c.effort[1] - c.flow[0] * c.effort[0];
  return acc;
}

double BoundaryPorts::energy_flux() const {
  double acc = 0.0;
  for (const auto& c : energy) {
    if (c.rate_on_chi) {
      acc += c.chi_rate[1] * c.eps[1] - c.chi_rate[0] * c.eps[0];
    } else {
      acc += c.chi[1] * c.eps_rate[1] - c.chi[0] * c.eps_rate[0];
    }
  }
  return acc;
}

static Eigen::VectorXd random_state(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

static double min_sym_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

StructureReport check_structure(const PHDescriptor& d, int n_samples, unsigned seed,
                                double tolerance) {
  StructureReport rep;
  std::mt19937_64 rng(seed);

  if (d.Jop.size() > 0 && d.Hblk.size() > 0 && d.j_pairing) {
    // x^T (H J + J^T H) y must be exhausted by the declared boundary pairing.
    Eigen::MatrixXd skew = d.Hblk * d.Jop + d.Jop.transpose() * d.Hblk;
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXd x = random_state(rng, d.Jop.rows());
      Eigen::VectorXd y = random_state(rng, d.Jop.rows());
      double lhs = x.dot(skew * y);
      double declared = d.j_pairing(x, y);
      double scale = std::max({1.0, std::abs(x.dot(d.Hblk * (d.Jop * y))), std::abs(declared)});
      rep.j_skew = std::max(rep.j_skew, std::abs(lhs - declared) / scale);
    }
  }

  if (d.Sop.size() > 0 && d.Pop.size() > 0 && d.Hsub.size() > 0 && d.lagrange_pairing) {
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXd x = random_state(rng, d.Sop.cols());
      Eigen::VectorXd y = random_state(rng, d.Sop.cols());
      double sp = (d.Sop * x).dot(d.Hsub * (d.Pop * y));
      double ps = (d.Pop * x).dot(d.Hsub * (d.Sop * y));
      double declared = d.lagrange_pairing(x, y);
      double scale = std::max({1.0, std::abs(sp), std::abs(declared)});
      rep.lagrange = std::max(rep.lagrange, std::abs(sp - ps - declared) / scale);
    }
  }

  if (d.ham.M.size() > 0 && d.ham.pairing_part && d.ham.boundary_part) {
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXd z = random_state(rng, d.n);
      double total = d.ham.total(z);
      double split = d.ham.pairing_part(z) + d.ham.boundary_part(z);
      double scale = std::max(1.0, std::abs(total));
      rep.energy_split = std::max(rep.energy_split, std::abs(split - total) / scale);
    }
  }

  if (d.Rquad.size() > 0) {
    double nr = std::max(1.0, d.Rquad.norm());
    rep.r_min = min_sym_eigenvalue(d.Rquad) / nr;
  }
  if (d.ham.M.size() > 0) {
    double nm = std::max(1.0, d.ham.M.norm());
    rep.m_min = min_sym_eigenvalue(d.ham.M) / nm;
  }

  double neg = std::min(rep.r_min, rep.m_min);
  rep.worst = std::max({rep.j_skew, rep.lagrange, rep.energy_split, neg < 0.0 ? -neg : 0.0});
  // Positivity gets a fixed floor: eigenvalues of a psd Gram matrix may round
  // slightly below zero but never past -1e-12 at these sizes.
  rep.ok = rep.j_skew <= tolerance && rep.lagrange <= tolerance &&
           rep.energy_split <= tolerance && rep.r_min >= -1e-12 && rep.m_min >= -1e-12;
  return rep;
}

void assemble(PHDescriptor& d, unsigned seed) {
  if (d.n <= 0 || d.E.rows() != d.n || d.A.rows() != d.n || d.ham.M.rows() != d.n) {
    throw StructureError(d.name + ": inconsistent dimensions at assembly");
  }
  StructureReport rep = check_structure(d, 16, seed, tolerance::scaled(tolerance::assembly));
  if (!rep.ok) {
    std::ostringstream os;
    os << d.name << ": structural certificate failed at assembly"
       << " (skew " << rep.j_skew << ", lagrange " << rep.lagrange << ", energy split "
       << rep.energy_split << ", min eig R " << rep.r_min << ", min eig M " << rep.m_min << ")";
    throw StructureError(os.str());
  }
}

Eigen::VectorXd eval_effort(const PHDescriptor& d, const Eigen::VectorXd& z) {
  if (!d.effort) throw SolverError(d.name + ": no effort map");
  return d.effort(z);
}

BoundaryPorts read_boundary_ports(const PHDescriptor& d, const Eigen::VectorXd& z,
                                  const Eigen::VectorXd& state_rate) {
  if (!d.ports) throw SolverError(d.name + ": no boundary port map");
  return d.ports(z, state_rate);
}

}  // namespace phs1d
