#pragma once

namespace phs1d::tolerance {

// Structural identities checked once at assembly.
inline constexpr double assembly = 1e-11;
// Identities re-checked along a run (constraint residuals, refinement targets).
inline constexpr double runtime = 1e-10;

// Discrete Green identity, relative to the participating inner products.
inline constexpr double green = 1e-10;
// Per-step energy ledger residual, relative to max(|H|, port scale).
inline constexpr double ledger = 1e-8;
// Clamped dissipative runs: H may exceed the running minimum by this times H(0).
inline constexpr double decay = 1e-10;
// Clamped lossless runs: relative drift of H.
inline constexpr double conservation = 1e-9;
// Representation-transform operator identities, relative to operator scale.
inline constexpr double transform = 1e-10;
// Constraint-projection identity, scaled by 1/spacing.
inline constexpr double projector = 1e-10;
// Four-corner trajectory diagram, relative.
inline constexpr double diagram = 1e-7;
// Shared-field trajectory equivalence between representations, relative.
inline constexpr double equivalence = 1e-7;
// Central-difference variational derivative probe.
inline constexpr double variational = 1e-8;
// Rayleigh quotients of the second and fourth derivative on one sine mode.
inline constexpr double quadrature_second = 1e-3;
inline constexpr double quadrature_fourth = 1e-2;
// Spectral oracles: heat decay rate, pure-bending frequency.
inline constexpr double heat_rate = 1e-2;
inline constexpr double bending_freq = 2e-2;

// Global multiplier read once from PHS1D_TOL_SCALE. Unset means 1.
// A set but unparsable or non-positive value is a configuration error.
double scale();

inline double scaled(double base) { return base * scale(); }

}  // namespace phs1d::tolerance
