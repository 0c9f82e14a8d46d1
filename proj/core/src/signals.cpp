#include "tmoctl/signals.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>

#include <fftw3.h>

#include "tmoctl/errors.hpp"

namespace tmoctl {

void ReferenceSpec::validate() const {
    if (!(t_transition > 0.0)) throw Error("ReferenceSpec: t_transition must be positive");
}

namespace {

// 35 x^4 - 84 x^5 + 70 x^6 - 20 x^7 and its derivatives in x.
double septic(double x, int d) {
    static constexpr double c[4] = {35.0, -84.0, 70.0, -20.0};
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        const int p = 4 + i;
        if (p - d < 0) continue;
        double f = c[i];
        for (int j = 0; j < d; ++j) f *= static_cast<double>(p - j);
        acc += f * std::pow(x, p - d);
    }
    return acc;
}

}  // namespace

double transition_reference(const ReferenceSpec& spec, double t, int derivative) {
    spec.validate();
    if (derivative < 0 || derivative > 3)
        throw Error("transition_reference: derivative order must be 0..3");
    double value = (derivative == 0) ? spec.r0 : 0.0;
    double lo = spec.r0, hi = spec.r1;
    const double T = spec.t_transition;
    for (double st : spec.start_times) {
        const double x = (t - st) / T;
        if (x > 0.0 && x < 1.0) {
            value += (hi - lo) * septic(x, derivative) / std::pow(T, derivative);
        } else if (x >= 1.0 && derivative == 0) {
            value += (hi - lo);
        }
        std::swap(lo, hi);
    }
    return value;
}

void DisturbanceSpec::validate() const {
    if (!(band_lo > 0.0 && band_hi > band_lo)) throw Error("DisturbanceSpec: bad band");
    if (!(amplitude_peak > 0.0)) throw Error("DisturbanceSpec: amplitude_peak must be positive");
    if (!(duration > 0.0)) throw Error("DisturbanceSpec: duration must be positive");
    if (!(start_time >= 0.0)) throw Error("DisturbanceSpec: start_time must be nonnegative");
}

std::vector<double> disturbance_signal(const DisturbanceSpec& spec,
                                       const std::vector<double>& t_grid) {
    spec.validate();
    if (t_grid.size() < 2) throw Error("disturbance_signal: grid too short");
    const double t_s = t_grid[1] - t_grid[0];
    if (!(t_s > 0.0)) throw Error("disturbance_signal: grid must be increasing");
    if (spec.band_hi >= std::numbers::pi / t_s)
        throw Error("disturbance_signal: band exceeds the sample-rate Nyquist frequency");

    const auto n = static_cast<size_t>(std::lround(spec.duration / t_s));
    if (n < 4) throw Error("disturbance_signal: window too short for the band");

    // Conjugate-symmetric unit spectrum on the in-band bins, random phases
    // drawn from the raw mt19937 stream (implementation-independent).
    std::mt19937 rng(spec.seed);
    const size_t n_half = n / 2 + 1;
    std::vector<std::complex<double>> spectrum(n_half, {0.0, 0.0});
    const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * t_s);
    size_t bins = 0;
    for (size_t k = 1; k < n_half; ++k) {
        const double w = static_cast<double>(k) * d_omega;
        if (w < spec.band_lo || w > spec.band_hi) continue;
        const double phase =
            2.0 * std::numbers::pi * (static_cast<double>(rng()) / 4294967296.0);
        spectrum[k] = std::polar(1.0, phase);
        ++bins;
    }
    if (bins == 0) throw Error("disturbance_signal: band contains no spectral bins");

    std::vector<double> window(n);
    {
        // FFTW's planner is not thread-safe; execution is.
        static std::mutex planner_mutex;
        fftw_plan plan;
        {
            const std::lock_guard<std::mutex> lock(planner_mutex);
            plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                        reinterpret_cast<fftw_complex*>(spectrum.data()),
                                        window.data(), FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        const std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }

    double peak = 0.0;
    for (double v : window) peak = std::max(peak, std::abs(v));
    const double scale = spec.amplitude_peak / peak;
    for (double& v : window) v *= scale;

    std::vector<double> out(t_grid.size(), 0.0);
    for (size_t i = 0; i < t_grid.size(); ++i) {
        const double rel = t_grid[i] - spec.start_time;
        if (rel < 0.0) continue;
        const auto k = static_cast<size_t>(std::lround(rel / t_s));
        if (k < n) out[i] = window[k];
    }
    return out;
}

double jitter(double t, double amplitude, double omega) {
    return std::sin(omega * t) >= 0.0 ? amplitude : -amplitude;
}

void write_signal_csv(std::ostream& os, const std::vector<double>& t,
                      const std::vector<double>& value) {
    if (t.size() != value.size()) throw Error("write_signal_csv: length mismatch");
    os << "t,value\n";
    char buf[80];
    for (size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.12g\n", t[i], value[i]);
        os << buf;
    }
}

}  // namespace tmoctl
