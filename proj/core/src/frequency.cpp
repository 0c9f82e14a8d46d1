#include "tmoctl/frequency.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "tmoctl/errors.hpp"

namespace tmoctl {

namespace {
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}

std::vector<double> FrequencyResponse::magnitude() const {
    std::vector<double> m(values.size());
    for (size_t i = 0; i < values.size(); ++i) m[i] = std::abs(values[i]);
    return m;
}

std::vector<double> FrequencyResponse::magnitude_db() const {
    std::vector<double> m(values.size());
    for (size_t i = 0; i < values.size(); ++i) m[i] = 20.0 * std::log10(std::abs(values[i]));
    return m;
}

std::vector<double> FrequencyResponse::phase_deg() const {
    std::vector<double> ph(values.size());
    double offset = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        // Remove the delay factor before unwrapping so only the rational
        // part is tracked by continuity; the exact delay term goes back in.
        Complex rational = values[i];
        if (delay > 0.0) rational *= std::polar(1.0, omega[i] * delay);
        double a = std::arg(rational);
        if (i > 0) {
            while (a + offset - prev > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
            while (a + offset - prev < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
        }
        prev = a + offset;
        ph[i] = (prev - omega[i] * delay) * kRadToDeg;
    }
    return ph;
}

void FrequencyResponse::write_csv(std::ostream& os) const {
    const auto mdb = magnitude_db();
    const auto ph = phase_deg();
    os << "omega_rad_s,re,im,mag_db,phase_deg\n";
    char buf[200];
    for (size_t i = 0; i < omega.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", omega[i],
                      values[i].real(), values[i].imag(), mdb[i], ph[i]);
        os << buf;
    }
}

std::vector<double> log_grid(double omega_min, double omega_max, int points_per_decade) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw Error("log_grid requires 0 < omega_min < omega_max");
    const double decades = std::log10(omega_max / omega_min);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
    return log_grid_n(omega_min, omega_max, n);
}

std::vector<double> log_grid_n(double omega_min, double omega_max, int n_points) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || n_points < 2)
        throw Error("log_grid_n requires 0 < omega_min < omega_max and n >= 2");
    std::vector<double> w(static_cast<size_t>(n_points));
    const double l0 = std::log10(omega_min), l1 = std::log10(omega_max);
    for (int i = 0; i < n_points; ++i)
        w[static_cast<size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (n_points - 1));
    w.front() = omega_min;
    w.back() = omega_max;
    return w;
}

FrequencyResponse freq_response(const RationalTF& g, const std::vector<double>& grid) {
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw Error("frequency grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw Error("frequency grid must be increasing");
    }
    FrequencyResponse fr;
    fr.omega = grid;
    fr.delay = g.delay();
    fr.values.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) fr.values[i] = g.eval(grid[i]);
    return fr;
}

AnalyticPhase::AnalyticPhase(const RationalTF& g) : delay_(g.delay()) {
    if (g.num().is_zero()) throw Error("phase of the zero transfer function is undefined");
    zeros_ = g.num().roots();
    poles_ = g.den().roots();
    const double k = g.num().leading() / g.den().leading();
    gain_sign_phase_ = (k < 0.0) ? std::numbers::pi : 0.0;
}

double AnalyticPhase::operator()(double omega) const {
    // Each factor (jw - r) has a continuous argument in w for r off the
    // positive imaginary axis, so the sum is the exact unwrapped phase.
    double ph = gain_sign_phase_;
    const Complex jw{0.0, omega};
    for (const Complex& z : zeros_) ph += std::arg(jw - z);
    for (const Complex& p : poles_) ph -= std::arg(jw - p);
    return ph - omega * delay_;
}

}  // namespace tmoctl
