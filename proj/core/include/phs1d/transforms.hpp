#pragma once

#include <vector>

#include <Eigen/Dense>

#include "phs1d/models.hpp"
#include "phs1d/sbp.hpp"

namespace phs1d {

// Change-of-representation operators between the four-field displacement form
// and the five-field strain form of the shear beam, together with the reduced
// thin-beam pair and the constraint projectors of the thin-beam limit.
//
// The antiderivative uses the two-step recurrence x[i+1] = x[i-1] + 2 h u[i]
// seeded with x[0] = 0, x[1] = h u[0], then removes the H-weighted mean; this
// makes antider * d1 equal exactly I - Pmean, the projector complement of the
// constant mode, so forward and inverse maps compose to the identity on the
// zero-mean representative of the displacement field.
struct BeamTransforms {
  int n = 0;
  Eigen::MatrixXd antider;
  Eigen::MatrixXd G, F;        // displacement -> strain and back
  Eigen::MatrixXd Gdag, Fdag;  // formal adjoints under the block H norms
  Eigen::MatrixXd Gr, Grdag;   // reduced pair: (w, p) -> (eps_w, eps_phi, p)
  Eigen::MatrixXd PiE, PiI;    // thin-beam constraint projectors
  Eigen::MatrixXd Zdom;        // diag(I - Pmean, I, I, I): admissible domain
};

BeamTransforms build_beam_transforms(const SbpOps& s);

// Operator-level certificates, worst case over parameter draws where the
// operator depends on material constants. Conjugation residuals are raw
// because both sides are assembled from the same derivative matrix and cancel
// entry by entry; identities involving the antiderivative hold only on the
// admissible domain and away from the boundary closure rows, so these are
// measured after right-multiplying by Zdom and restricting to interior rows.
struct TransformReport {
  double antider_identity = 0.0;     // antider * d1 vs I - Pmean
  double j_conjugation = 0.0;        // G J_impl G^dag vs J_expl
  double s_conjugation = 0.0;        // G^dag S_expl G vs S_impl, relative
  double reduced_j = 0.0;            // Gr Jr_impl Gr^dag vs Jr_expl
  double fg_identity = 0.0;          // F G vs Zdom
  double adjoint_identity = 0.0;     // (G^dag F^dag - I) Zdom, interior
  double projector_intertwine = 0.0; // (F PiE G - PiI) Zdom, interior
  double worst = 0.0;
  bool ok = false;
};

TransformReport verify_transform_identities(const SbpOps& s, int n_draws, unsigned seed,
                                            double tolerance);

// One sampled instant of the representation diagram along a simulated pair of
// trajectories. All columns are max-norm state discrepancies divided by the
// max-norm of the shared initial data.
struct DiagramRow {
  double t = 0.0;
  double d_timo_fwd = 0.0;   // G z_impl vs z_expl, shear beam
  double d_timo_inv = 0.0;   // F z_expl vs Zdom z_impl
  double d_eb_fwd = 0.0;     // derivative images of the thin-beam DAE pair
  double d_eb_inv = 0.0;     // antiderivative images of the same pair
  double d_commute = 0.0;    // F PiE z_expl vs Zdom PiI z_impl
};

struct DiagramReport {
  std::vector<DiagramRow> rows;
  double max_timo_fwd = 0.0;
  double max_timo_inv = 0.0;
  double max_eb_fwd = 0.0;
  double max_eb_inv = 0.0;
  double max_commute = 0.0;
  double worst = 0.0;
  bool ok = false;
};

DiagramReport run_diagram(const SbpOps& s, const BeamParams& p, double dt, int steps,
                          double tolerance);

// Trajectory agreement of the constrained thin-beam forms with their reduced
// models, shared fields compared at every step.
struct EquivalenceReport {
  double explicit_pair = 0.0;
  double implicit_pair = 0.0;
  double worst = 0.0;
  bool ok = false;
};

EquivalenceReport verify_equivalence(const SbpOps& s, const BeamParams& p, double dt, int steps,
                                     double tolerance);

}  // namespace phs1d
