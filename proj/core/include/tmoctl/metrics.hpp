#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmoctl {

/// Per-scenario evaluation: RMS error, peak absolute error, peak input.
struct MetricsReport {
    double e_rms = 0.0;      // m
    double e_max_abs = 0.0;  // m
    double u_max_abs = 0.0;  // V
    std::string controller;  // "fo" | "hinf"
    std::string experiment;  // "tracking" | "disturbance"
    double tau_factor = 1.0;
};

/// e_RMS = sqrt(mean e_n^2), |e_max| = max |e_n|, |u_max| = max |u_n|.
MetricsReport compute_metrics(const std::vector<double>& e, const std::vector<double>& u);

/// Rows (experiment x controller x metric), one column per tau factor,
/// mirroring the published quantitative-evaluation table.
void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& reports);
std::string metrics_to_json(const std::vector<MetricsReport>& reports);

}  // namespace tmoctl
