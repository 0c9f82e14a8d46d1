#pragma once

#include "tmoctl/state_space.hpp"

namespace tmoctl {

/// H-infinity norm of a stable realization by Hamiltonian bisection:
/// gamma exceeds the norm iff the associated Hamiltonian matrix has no
/// imaginary-axis eigenvalues. Bisects to rel_tol (default 1e-6).
double hinf_norm(const StateSpaceModel& sys, double rel_tol = 1e-6);

/// H-infinity norm of a stable transfer function. delay == 0 realizes the
/// system and uses the Hamiltonian test; delay > 0 falls back to the grid
/// supremum (the magnitude of a pure input delay is 1 at all frequencies,
/// so the result coincides with the delay-free norm).
/// Throws UnstableSystemError / MarginallyStableError.
double hinf_norm(const RationalTF& g, double rel_tol = 1e-6);

/// Supremum of |g(jw)| over an adaptive log grid (>= 200 points/decade seed
/// band derived from the pole/zero spread), with local refinement around
/// detected peaks until the peak estimate changes by < rel_refine. DC and
/// the high-frequency limit are included.
double hinf_norm_gridsup(const RationalTF& g, double rel_refine = 1e-6);

}  // namespace tmoctl
