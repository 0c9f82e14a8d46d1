#include "tmoctl/margins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tmoctl/errors.hpp"
#include "tmoctl/frequency.hpp"

namespace tmoctl {

namespace {

constexpr double kPi = std::numbers::pi;

double log_mag(const RationalTF& l, double w) { return std::log(std::abs(l.eval(w))); }

// Geometric bisection of f on [a,b] with f(a), f(b) of opposite sign.
template <typename F>
double bisect_log(F&& f, double a, double b, double fa) {
    for (int it = 0; it < 200; ++it) {
        const double c = std::sqrt(a * b);
        const double fc = f(c);
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
        }
        if ((b - a) <= 1e-10 * c) break;
    }
    return std::sqrt(a * b);
}

}  // namespace

MarginReport stability_margins(const RationalTF& l, double omega_min, double omega_max) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw Error("stability_margins: bad search band");

    const AnalyticPhase phase(l);

    // Base grid of 60 points/decade, subdivided until neither the phase nor
    // the log magnitude jumps by more than ~30deg / 0.5 between neighbors.
    std::vector<double> grid = log_grid(omega_min, omega_max, 60);
    std::vector<double> ph(grid.size()), lm(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        ph[i] = phase(grid[i]);
        lm[i] = log_mag(l, grid[i]);
    }
    const double max_dphi = kPi / 6.0;
    for (int pass = 0; pass < 24; ++pass) {
        bool split = false;
        std::vector<double> g2;
        std::vector<double> p2, m2;
        g2.reserve(grid.size() * 2);
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            g2.push_back(grid[i]);
            p2.push_back(ph[i]);
            m2.push_back(lm[i]);
            if (std::abs(ph[i + 1] - ph[i]) > max_dphi || std::abs(lm[i + 1] - lm[i]) > 0.5) {
                const double mid = std::sqrt(grid[i] * grid[i + 1]);
                g2.push_back(mid);
                p2.push_back(phase(mid));
                m2.push_back(log_mag(l, mid));
                split = true;
            }
        }
        g2.push_back(grid.back());
        p2.push_back(ph.back());
        m2.push_back(lm.back());
        grid.swap(g2);
        ph.swap(p2);
        lm.swap(m2);
        if (!split) break;
    }

    MarginReport rep;

    // Gain crossovers: |L| = 1.
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (lm[i] == 0.0 || (lm[i] > 0.0) == (lm[i + 1] > 0.0)) continue;
        const double wc =
            bisect_log([&](double w) { return log_mag(l, w); }, grid[i], grid[i + 1], lm[i]);
        double pm = 180.0 + phase(wc) * 180.0 / kPi;
        while (pm > 180.0) pm -= 360.0;
        while (pm <= -180.0) pm += 360.0;
        rep.gain_crossovers.push_back({wc, pm});
    }
    if (!rep.gain_crossovers.empty()) {
        rep.has_gain_crossover = true;
        // |L(j omega_c)| must sit inside 1 +/- 1e-8 on every reported crossover.
        for (const GainCrossover& c : rep.gain_crossovers)
            if (std::abs(std::abs(l.eval(c.omega)) - 1.0) > 1e-8)
                throw Error("stability_margins: crossover bisection failed to converge");
        const auto worst =
            std::min_element(rep.gain_crossovers.begin(), rep.gain_crossovers.end(),
                             [](const GainCrossover& a, const GainCrossover& b) {
                                 return a.phase_margin_deg < b.phase_margin_deg;
                             });
        rep.omega_c = worst->omega;
        rep.phase_margin_deg = worst->phase_margin_deg;
    }

    // Phase crossovers: arg L = 180deg modulo 360 (covers loops whose
    // continuous phase starts above +180 as well as below -180).
    const auto [pmin, pmax] = std::minmax_element(ph.begin(), ph.end());
    const int kmin = static_cast<int>(std::floor((kPi - *pmax) / (2.0 * kPi)));
    const int kmax = static_cast<int>(std::ceil((kPi - *pmin) / (2.0 * kPi)));
    for (int k = kmin; k <= kmax; ++k) {
        const double target = kPi - 2.0 * kPi * k;
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            const double f0 = ph[i] - target, f1 = ph[i + 1] - target;
            if (f0 == 0.0 || (f0 > 0.0) == (f1 > 0.0)) continue;
            const double wpc =
                bisect_log([&](double w) { return phase(w) - target; }, grid[i], grid[i + 1], f0);
            rep.phase_crossovers.push_back({wpc, 1.0 / std::abs(l.eval(wpc))});
        }
    }
    if (!rep.phase_crossovers.empty()) {
        rep.has_phase_crossover = true;
        std::sort(rep.phase_crossovers.begin(), rep.phase_crossovers.end(),
                  [](const PhaseCrossover& a, const PhaseCrossover& b) {
                      return a.gain_margin < b.gain_margin;
                  });
        rep.omega_pc = rep.phase_crossovers.front().omega;
        rep.gain_margin = rep.phase_crossovers.front().gain_margin;
        std::sort(rep.phase_crossovers.begin(), rep.phase_crossovers.end(),
                  [](const PhaseCrossover& a, const PhaseCrossover& b) { return a.omega < b.omega; });
    }
    return rep;
}

}  // namespace tmoctl
