#pragma once

#include <array>
#include <vector>

#include "tmoctl/plant.hpp"
#include "tmoctl/signals.hpp"

namespace tmoctl {

/// Sampled reference derivatives and the consistent state trajectory used by
/// the model-inverse feedforward. `shift` is the time offset (in seconds,
/// quantized to whole samples) at which the inversion is evaluated relative
/// to simulation time: -tau_n reproduces the published formula, +tau_n
/// pre-shifts the known reference so the plant output meets it after the
/// transport delay.
struct FeedforwardPlan {
    std::vector<double> r, r1, r2, r3;            // shifted reference derivatives
    std::vector<std::array<double, 4>> x_star;    // trajectory consistent with r
    double shift = 0.0;
    double t_s = 0.0;
};

/// Samples the reference (and derivatives) at t_k + shift on a grid of
/// n_samples steps of t_s, and lifts the output trajectory to the state:
/// x3 = r, x4 = r', and (x1, x2) from the load equation
///   M r'' = k (x1 - r) + zeta (x2 - r'),
/// solved on the fast spring manifold (series in zeta/k, the quadratic term
/// through a central difference of the auxiliary derivative).
FeedforwardPlan build_feedforward_plan(const ReferenceSpec& ref, const PlantParams& p,
                                       int n_samples, double t_s, double shift);

/// u*(t) = (-C A^3 x*(t) + r'''(t)) / (C A^2 B) on the plan's grid.
/// Requires zeta > 0 (relative degree 3).
std::vector<double> feedforward_ustar(const FeedforwardPlan& plan, const PlantParams& p);

}  // namespace tmoctl
