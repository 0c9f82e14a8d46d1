#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "tmoctl/errors.hpp"
#include "tmoctl/metrics.hpp"
#include "tmoctl/signals.hpp"

using namespace tmoctl;

TEST_CASE("transition polynomial boundary conditions") {
    ReferenceSpec spec;
    spec.r0 = 0.005;
    spec.r1 = 0.010;
    spec.t_transition = 2.0;
    spec.start_times = {0.0};
    CHECK(transition_reference(spec, 0.0, 0) == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(transition_reference(spec, 2.0, 0) == doctest::Approx(0.010).epsilon(1e-12));
    for (int d = 1; d <= 3; ++d) {
        CHECK(std::abs(transition_reference(spec, 0.0, d)) <= 1e-12);
        CHECK(std::abs(transition_reference(spec, 2.0, d)) <= 1e-12);
    }
    // Midpoint by odd symmetry.
    CHECK(transition_reference(spec, 1.0, 0) == doctest::Approx(0.0075).epsilon(1e-12));
}

TEST_CASE("transition coefficients from the corrected factorial formula") {
    // 840 (-1)^{k-4} / (k (k-4)! (7-k)!) for k = 4..7 gives {35,-84,70,-20};
    // the sum at x = 1 must be exactly 1 (the printed (k-2)! variant gives 8.33).
    double expect[4];
    double sum = 0.0;
    for (int k = 4; k <= 7; ++k) {
        auto fact = [](int n) { double f = 1.0; for (int i = 2; i <= n; ++i) f *= i; return f; };
        const double c = 840.0 * ((k - 4) % 2 == 0 ? 1.0 : -1.0) / (k * fact(k - 4) * fact(7 - k));
        expect[k - 4] = c;
        sum += c;
    }
    CHECK(expect[0] == doctest::Approx(35.0));
    CHECK(expect[1] == doctest::Approx(-84.0));
    CHECK(expect[2] == doctest::Approx(70.0));
    CHECK(expect[3] == doctest::Approx(-20.0));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transition monotonicity and derivative consistency") {
    ReferenceSpec spec;
    spec.start_times = {0.5};
    const double ts = 1e-3;
    double prev = transition_reference(spec, 0.0, 0);
    for (double t = ts; t <= 4.0; t += ts) {
        const double v = transition_reference(spec, t, 0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    // Central differences of r match r' to O(ts^2).
    for (double t : {0.7, 1.1, 1.9, 2.4}) {
        const double fd = (transition_reference(spec, t + ts, 0) -
                           transition_reference(spec, t - ts, 0)) /
                          (2.0 * ts);
        const double an = transition_reference(spec, t, 1);
        CHECK(std::abs(fd - an) <= 1e-4 * std::max(1.0, std::abs(an)) + 1e-9);
    }
}

TEST_CASE("repeated set-point changes alternate direction") {
    ReferenceSpec spec;
    spec.start_times = {1.0, 8.0};
    CHECK(transition_reference(spec, 5.0, 0) == doctest::Approx(spec.r1));
    CHECK(transition_reference(spec, 12.0, 0) == doctest::Approx(spec.r0));
}

TEST_CASE("disturbance: band limits, exact peak, determinism") {
    DisturbanceSpec spec;
    spec.duration = 4.0;
    spec.start_time = 0.0;
    spec.seed = 42;
    const double ts = 2e-4;
    const size_t n = static_cast<size_t>(spec.duration / ts);
    std::vector<double> grid(n);
    for (size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * ts;

    const std::vector<double> d = disturbance_signal(spec, grid);
    double peak = 0.0;
    for (double v : d) peak = std::max(peak, std::abs(v));
    CHECK(peak == doctest::Approx(spec.amplitude_peak).epsilon(1e-12));

    const std::vector<double> d2 = disturbance_signal(spec, grid);
    CHECK(d == d2);  // bit-identical per seed
    DisturbanceSpec other = spec;
    other.seed = 43;
    CHECK(disturbance_signal(other, grid) != d);

    // Spectrum vanishes outside the band (<= -60 dB of the in-band level)
    // and Parseval holds between domains.
    std::vector<std::complex<double>> X(n / 2 + 1);
    std::vector<double> copy = d;
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), copy.data(),
                                          reinterpret_cast<fftw_complex*>(X.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * ts);
    double inband = 0.0, outband = 0.0;
    double spectral_energy = 0.0;
    for (size_t k = 0; k < X.size(); ++k) {
        const double w = static_cast<double>(k) * dw;
        const double a = std::abs(X[k]);
        const double e2 = a * a * ((k == 0 || k == n / 2) ? 1.0 : 2.0);
        spectral_energy += e2;
        if (w >= spec.band_lo && w <= spec.band_hi)
            inband = std::max(inband, a);
        else
            outband = std::max(outband, a);
    }
    CHECK(outband <= inband * 1e-3);
    double time_energy = 0.0;
    for (double v : d) time_energy += v * v;
    CHECK(spectral_energy / static_cast<double>(n) ==
          doctest::Approx(time_energy).epsilon(1e-9));
}

TEST_CASE("disturbance error paths") {
    DisturbanceSpec spec;
    spec.band_lo = 1e-6;
    spec.band_hi = 2e-6;  // below the first bin -> empty band
    spec.duration = 1.0;
    std::vector<double> grid(5000);
    for (size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) * 2e-4;
    CHECK_THROWS_AS(disturbance_signal(spec, grid), Error);
}

TEST_CASE("jitter square wave") {
    CHECK(jitter(0.001) == doctest::Approx(0.4));
    const double period = 2.0 * std::numbers::pi / 450.0;
    CHECK(period == doctest::Approx(0.01396).epsilon(1e-3));
    CHECK(jitter(0.6 * period) == doctest::Approx(-0.4));
    // Zero mean over one period (fine quadrature).
    double acc = 0.0;
    const int n = 200001;
    for (int i = 0; i < n; ++i) acc += jitter(period * i / n);
    CHECK(std::abs(acc / n) <= 1e-4);
}

TEST_CASE("signal CSV export") {
    std::ostringstream os;
    write_signal_csv(os, {0.0, 1e-3}, {0.005, 0.0051});
    CHECK(os.str().rfind("t,value\n", 0) == 0);
    CHECK_THROWS_AS(write_signal_csv(os, {0.0}, {1.0, 2.0}), Error);
}

TEST_CASE("metrics formulas") {
    MetricsReport m = compute_metrics({0.003, 0.003}, {1.0, 2.0});
    CHECK(m.e_rms == doctest::Approx(0.003));
    CHECK(m.e_max_abs == doctest::Approx(0.003));
    CHECK(m.u_max_abs == doctest::Approx(2.0));

    m = compute_metrics({3.0, -4.0}, {0.0, 0.0});
    CHECK(m.e_rms == doctest::Approx(std::sqrt(25.0 / 2.0)));
    CHECK(m.e_rms == doctest::Approx(3.5355).epsilon(1e-4));
    CHECK(m.e_max_abs == doctest::Approx(4.0));
    CHECK(m.e_rms <= m.e_max_abs);

    CHECK_THROWS_AS(compute_metrics({}, {}), Error);
    CHECK_THROWS_AS(compute_metrics({1.0}, {1.0, 2.0}), Error);
}
