#pragma once

#include <iosfwd>
#include <vector>

#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

/// Complex frequency samples on a strictly increasing positive grid.
/// Magnitude/phase are derived views; the generating delay is kept so the
/// phase column can add the exact -w*tau term instead of unwrapping it.
struct FrequencyResponse {
    std::vector<double> omega;
    std::vector<Complex> values;
    double delay = 0.0;

    std::vector<double> magnitude() const;
    std::vector<double> magnitude_db() const;
    /// Rational part unwrapped by continuity along the grid, delay phase
    /// added analytically. Degrees.
    std::vector<double> phase_deg() const;

    /// Columns: omega_rad_s, re, im, mag_db, phase_deg.
    void write_csv(std::ostream& os) const;
};

/// Logarithmic grid with a fixed number of points per decade (endpoints included).
std::vector<double> log_grid(double omega_min, double omega_max, int points_per_decade);
/// Logarithmic grid with a fixed total point count.
std::vector<double> log_grid_n(double omega_min, double omega_max, int n_points);

/// Samples g on the grid; the pure delay is evaluated exactly.
FrequencyResponse freq_response(const RationalTF& g, const std::vector<double>& grid);

/// Exact continuous phase (radians) from the pole/zero decomposition plus the
/// analytic -w*tau delay term; anchored at the w->0+ limit, never aliased.
class AnalyticPhase {
  public:
    explicit AnalyticPhase(const RationalTF& g);
    double operator()(double omega) const;

  private:
    std::vector<Complex> zeros_, poles_;
    double gain_sign_phase_;
    double delay_;
};

}  // namespace tmoctl
