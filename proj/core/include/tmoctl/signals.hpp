#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tmoctl {

/// Set-point profile: alternating transitions r0 -> r1 -> r0 -> ... of
/// duration t_transition starting at each entry of start_times.
struct ReferenceSpec {
    double r0 = 0.005;          // m
    double r1 = 0.010;          // m
    double t_transition = 2.0;  // s
    std::vector<double> start_times{0.0};

    void validate() const;
};

/// Value or derivative (order 0..3) of the reference profile at time t.
/// The transition is the order-7 polynomial
///   r0 + (r1-r0) (35 x^4 - 84 x^5 + 70 x^6 - 20 x^7),  x = t/T clamped,
/// whose derivatives up to order 3 vanish at both boundaries.
double transition_reference(const ReferenceSpec& spec, double t, int derivative);

/// Band- and amplitude-limited noise: unit-magnitude spectrum with seeded
/// uniform random phases on the bins inside `band`, zero outside, brought to
/// the time domain by an inverse FFT and rescaled so max |d| equals
/// amplitude_peak exactly. Deterministic per seed.
struct DisturbanceSpec {
    double band_lo = 0.1;         // rad/s
    double band_hi = 20.0;        // rad/s
    double amplitude_peak = 2.0;  // V
    double duration = 18.0;       // s
    std::uint32_t seed = 1;
    double start_time = 2.0;      // s

    void validate() const;
};

/// Samples d(t) on the uniform grid t_grid (zero outside the active window).
std::vector<double> disturbance_signal(const DisturbanceSpec& spec,
                                       const std::vector<double>& t_grid);

/// Zero-mean square-wave dither A_j sign(sin(w_j t)).
double jitter(double t, double amplitude = 0.4, double omega = 450.0);

/// Columns: t, value.
void write_signal_csv(std::ostream& os, const std::vector<double>& t,
                      const std::vector<double>& value);

}  // namespace tmoctl
