#pragma once

#include <string>
#include <vector>

#include "tmoctl/state_space.hpp"

namespace tmoctl {

/// Controllability/observability Gramians of a stable realization.
struct GramianPair {
    Eigen::MatrixXd controllability;
    Eigen::MatrixXd observability;
};

GramianPair gramians(const StateSpaceModel& sys);

/// Hankel singular values, descending.
struct HankelSpectrum {
    std::vector<double> singular_values;
    /// Set when sigma_n / sigma_1 < 1e-12 (truncation basis is ill-conditioned).
    bool near_singular = false;

    /// JSON array of the singular values, for diagnostics.
    std::string to_json() const;
};

struct BalancedTruncation {
    StateSpaceModel model;
    HankelSpectrum spectrum;

    /// Classical a-priori bound 2 sum_{i>r} sigma_i for the kept order.
    double error_bound = 0.0;
};

/// Square-root balanced truncation: Gramian factors via symmetric
/// eigendecompositions, balancing transform from the SVD of their product.
/// Requires an asymptotically stable model and 1 <= target_order <= order.
BalancedTruncation balanced_truncate(const StateSpaceModel& sys, int target_order);

/// Moves denominator roots at the origin to -eps, leaving every other root
/// untouched. Integrators must be shifted this way before truncation.
RationalTF shift_origin_poles(const RationalTF& g, double eps);

}  // namespace tmoctl
