#pragma once

#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

/// Band and cell count of the recursive s^alpha approximation. N cells give
/// 2N+1 interlaced pole/zero pairs.
struct OustaloupSpec {
    double alpha;    // |alpha| <= 1
    double omega_l;  // rad/s, lower band edge
    double omega_h;  // rad/s, upper band edge
    int n_cells;     // N >= 1

    void validate() const;
};

/// Recursive Oustaloup filter approximating s^alpha over [omega_l, omega_h]:
/// zeros  w'_k = wl (wh/wl)^{(k + (1-alpha)/2) / (2N+1)}
/// poles  w_k  = wl (wh/wl)^{(k + (1+alpha)/2) / (2N+1)},  k = 0..2N,
/// gain anchored so |H(j sqrt(wl wh))| = (sqrt(wl wh))^alpha exactly.
/// alpha == 0 collapses to the unity transfer function.
RationalTF oustaloup(const OustaloupSpec& spec);

/// Fractional compensation element Q_{z,nu} ~ (1 + s/z)^{1/nu} for the
/// partial cancellation of a right-half-plane zero at +z.
struct CompensatorSpec {
    double z;        // rad/s, NMP zero location (z = 2/tau for a Pade-1 delay)
    int nu;          // order, alpha = 1/nu, nu >= 2
    double omega_l = 0.05;
    double omega_h = 50.0;
    int n_cells = 1;

    void validate() const;
};

struct Compensator {
    RationalTF q;          // ~ (1 + s/z)^{1/nu}, minimum phase, DC gain 1
    RationalTF q_inverse;  // the element actually placed in the loop
    bool band_contains_z = true;
};

/// Builds Q by applying the Oustaloup construction to the fractional power
/// of the mirrored (stable) zero factor: with beta = 1 - 1/nu,
///   Q(s) = c (s+z) / H_beta(s+z),  H_beta(sigma) ~ sigma^beta,
/// normalized so Q(0) = 1. The shift by z keeps every pole and zero real
/// negative, so Q and its inverse are stable and minimum phase.
Compensator partial_compensator(const CompensatorSpec& spec);

}  // namespace tmoctl
