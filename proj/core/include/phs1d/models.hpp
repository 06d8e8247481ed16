#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phs1d/descriptor.hpp"
#include "phs1d/sbp.hpp"

namespace phs1d {

enum class Mode { free_ends, clamped };

// Nonlocal seepage model: (Id - eps^2 dxx) dt h = alpha dxx h - beta dxxxx h.
struct DzektserParams {
  double alpha_s = 1.0;   // second-order mobility
  double beta_s = 1.0;    // fourth-order mobility
  double eps_nl = 0.1;    // nonlocality length in the metric
};

// Dynamic-strain-gradient rod with spring foundation, damping, and stress
// relaxation. t_ea unset means the combined stiffness e_mod * a_sec +
// mu_nl * k_f.
struct NanorodParams {
  double k_f = 1.0;
  double rhoA = 1.0;
  double mu_nl = 0.1;
  double e_mod = 1.0;
  double a_sec = 1.0;
  double b_damp = 1.0;
  double tau_d = 1.0;
  std::optional<double> t_ea;

  double axial() const { return e_mod * a_sec; }
  double t_ea_eff() const { return t_ea ? *t_ea : axial() + mu_nl * k_f; }
};

// Shear-deformable and thin beams under tension.
struct BeamParams {
  double rho = 1.0;
  double a_sec = 1.0;
  double i_mom = 1.0;
  double e_mod = 1.0;
  double t0 = 1.0;       // axial tension
  double kappaG = 1.0;   // shear modulus times correction factor

  double rhoA() const { return rho * a_sec; }
  double rhoI() const { return rho * i_mom; }
  double bending() const { return e_mod * i_mom; }
  double shear() const { return a_sec * kappaG; }
};

// Seepage, folded pencil on the head field alone.
PHDescriptor dzektser_explicit(const SbpOps& s, const DzektserParams& p, Mode mode);

// Named per-monomial decomposition of the seepage energy rate. Each column maps
// (state, state_rate) to its contribution; the columns sum to dH/dt exactly.
struct BalanceTerms {
  std::vector<std::string> names;
  std::vector<PairingFn> columns;
};
BalanceTerms dzektser_power_balance_terms(const SbpOps& s, const DzektserParams& p);

// Rod, five-field descriptor with algebraic stress row (differentiation index 2).
PHDescriptor nanorod_explicit(const SbpOps& s, const NanorodParams& p, Mode mode);
// Rod, three-field constitutive-pair form with the relaxation solve folded in.
PHDescriptor nanorod_implicit(const SbpOps& s, const NanorodParams& p, Mode mode);

// Shear beam, five-field strain-velocity form.
PHDescriptor timoshenko_explicit(const SbpOps& s, const BeamParams& p, Mode mode);
// Shear beam, four-field displacement form with higher-order constitutive map.
PHDescriptor timoshenko_implicit(const SbpOps& s, const BeamParams& p, Mode mode);

// Thin beam, five-field form with two algebraic rows (shear limit).
PHDescriptor eb_explicit_dae(const SbpOps& s, const BeamParams& p, Mode mode);
// Thin beam, three-field reduced strain form.
PHDescriptor eb_explicit_reduced(const SbpOps& s, const BeamParams& p, Mode mode);
// Thin beam, four-field displacement form with the rotation constraint kept.
PHDescriptor eb_implicit_dae(const SbpOps& s, const BeamParams& p, Mode mode);
// Thin beam, two-field displacement form.
PHDescriptor eb_implicit_reduced(const SbpOps& s, const BeamParams& p, Mode mode);

// Field names per model, in state-block order, for configs and diagnostics.
std::vector<std::string> field_names(const std::string& model_name);

}  // namespace phs1d
