#pragma once

#include <limits>
#include <vector>

#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

struct GainCrossover {
    double omega;             // |L| = 1 here
    double phase_margin_deg;  // 180 + arg L, mapped to (-180, 180]
};

struct PhaseCrossover {
    double omega;        // arg L = 180 deg (mod 360) here
    double gain_margin;  // 1 / |L|
};

/// Margins of an open loop. When several crossovers exist the headline
/// numbers are the smallest margins; all crossovers are listed.
struct MarginReport {
    double omega_c = std::numeric_limits<double>::quiet_NaN();
    double phase_margin_deg = std::numeric_limits<double>::infinity();
    double gain_margin = std::numeric_limits<double>::infinity();
    double omega_pc = std::numeric_limits<double>::quiet_NaN();
    bool has_gain_crossover = false;
    bool has_phase_crossover = false;
    std::vector<GainCrossover> gain_crossovers;
    std::vector<PhaseCrossover> phase_crossovers;
};

/// Locates crossovers by sign-change bracketing on a log grid (>= 60 points
/// per decade, refined where the phase moves fast) followed by bisection to
/// 1e-10 relative in omega. Delay phase enters analytically, so it never
/// aliases. A loop with no gain crossover in the band comes back flagged
/// with infinite margins.
MarginReport stability_margins(const RationalTF& l, double omega_min = 1e-3,
                               double omega_max = 1e3);

}  // namespace tmoctl
