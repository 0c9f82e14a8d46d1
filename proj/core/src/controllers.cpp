#include "tmoctl/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "tmoctl/errors.hpp"
#include "tmoctl/frequency.hpp"
#include "tmoctl/pade.hpp"

namespace tmoctl {

namespace {

Polynomial lin(double a) { return Polynomial{a, 1.0}; }                     // (s + a)
Polynomial quad(double c0, double c1) { return Polynomial{c0, c1, 1.0}; }  // s^2 + c1 s + c0

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

WeightSet build_weights() {
    WeightSet w;
    w.w1 = RationalTF{0.01 * lin(15.0), lin(1.5e-3)};
    w.w2 = RationalTF{0.95 * lin(3.0), lin(2850.0)};
    return w;
}

GeneralizedPlant build_generalized_plant(const RationalTF& g_tilde, const WeightSet& w) {
    if (g_tilde.delay() != 0.0)
        throw NonzeroDelayError("generalized plant takes the Pade surrogate, not an exact delay");
    const RationalTF one = RationalTF::constant(1.0);
    const RationalTF zero = RationalTF::zero();
    const RationalTF w1g = w.w1 * g_tilde;
    const RationalTF w2 = w.w2;
    GeneralizedPlant p;
    p.p11 = {{-1.0 * w.w1, w1g}, {zero, w2}};
    p.p12 = {{w1g}, {w2}};
    p.p21 = {{one, zero}, {zero, g_tilde}};
    p.p22 = {{zero}, {g_tilde}};
    return p;
}

ControllerSet canonical_hinf_controller() {
    // Shared denominator: s (s+507.2)(s+72.68)(s^2+9.086s+63.62)(s^2+307.9s+1.36e5).
    const Polynomial den = Polynomial{0.0, 1.0} * lin(507.2) * lin(72.68) * quad(63.62, 9.086) *
                           quad(1.36e5, 307.9);

    const Polynomial num1 = -0.030643 * (lin(-538.6) * lin(31.93) * lin(8.538) *
                                         quad(1.846e4, -32.18) * quad(1.923e5, -314.0));
    const Polynomial num2 = -3.3043 * (lin(-3.893e4) * lin(-1534.0) * lin(62.69) * lin(7.822) *
                                       lin(0.6413) * quad(257.6, 0.5762));

    ControllerSet set;
    set.c_inf_1 = RationalTF{num1, den};
    set.c_inf_2 = RationalTF{num2, den};
    set.c_fo = canonical_cfo();

    if (set.c_inf_1.order() != 7 || set.c_inf_2.order() != 7)
        throw Error("canonical H-inf controller must have order 7");
    if (!(set.c_inf_1.proper() && set.c_inf_2.proper()))
        throw Error("canonical H-inf controller must be proper");
    if (std::abs(den.coeff(0)) != 0.0)
        throw Error("canonical H-inf controller must carry an integrator pole");
    return set;
}

RationalTF canonical_cfo() {
    const Polynomial num = 120.2 * (lin(14.09) * lin(6.092) * lin(5.292) * lin(2.0) *
                                    lin(0.6667) * quad(267.4, 1.027));
    const Polynomial den = Polynomial{0.0, 1.0} * lin(6.0) * lin(5.484) * lin(5.203) *
                           lin(8.015) * lin(9.0) * lin(33.32);
    RationalTF c{num, den};
    if (c.order() != 7 || !c.proper()) throw Error("canonical C_FO must be proper of order 7");
    return c;
}

ControllerSet make_controller_set() { return canonical_hinf_controller(); }

RationalTF build_kpil() {
    return RationalTF{213.0 * (lin(2.0) * lin(2.0 / 3.0)), Polynomial{0.0, 1.0} * lin(6.0)};
}

RationalTF build_fpp() { return RationalTF{0.034 * quad(267.4, 1.027), lin(9.0)}; }

RationalTF assemble_cfo(const CompensatorSpec& spec) {
    const Compensator comp = partial_compensator(spec);
    const RationalTF assembled = build_kpil() * build_fpp() * comp.q_inverse;
    const RationalTF reference = canonical_cfo();

    const auto grid = log_grid_n(0.05, 50.0, 200);
    double worst_mag = 0.0, worst_phase = 0.0, worst_w = grid[0];
    for (double w : grid) {
        const Complex a = assembled.eval(w);
        const Complex r = reference.eval(w);
        const double mag_dev = std::abs(std::abs(a) / std::abs(r) - 1.0);
        const double ph_dev = std::abs(std::arg(a / r)) * kRadToDeg;
        if (mag_dev > worst_mag || ph_dev > worst_phase) worst_w = w;
        worst_mag = std::max(worst_mag, mag_dev);
        worst_phase = std::max(worst_phase, ph_dev);
    }
    if (worst_mag > 0.05 || worst_phase > 3.0)
        throw ToleranceViolationError(
            "assembled C_FO deviates from the published controller (worst at omega = " +
            std::to_string(worst_w) + " rad/s: " + std::to_string(worst_mag * 100.0) +
            "% magnitude, " + std::to_string(worst_phase) + " deg phase)");
    return assembled;
}

RationalTF integrator_augment(const RationalTF& c_hat, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 2e-3))
        throw Error("integrator_augment: epsilon must lie in (0, 2e-3]");
    return c_hat * RationalTF{Polynomial::constant(1.0), lin(epsilon)};
}

RationalTF integrator_augment_ideal(const RationalTF& c_hat) {
    return c_hat * RationalTF{Polynomial::constant(1.0), Polynomial{0.0, 1.0}};
}

namespace {

Eigen::MatrixXcd eval_tfm(const TfMatrix& m, double omega) {
    const auto rows = static_cast<Eigen::Index>(m.size());
    const auto cols = static_cast<Eigen::Index>(m.empty() ? 0 : m[0].size());
    Eigen::MatrixXcd out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            out(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(omega);
    return out;
}

}  // namespace

NormCheckReport lft_norm(const TfMatrix& p11, const TfMatrix& p12, const TfMatrix& p21,
                         const TfMatrix& p22, const TfMatrix& controller) {
    const size_t nz = p11.size();
    const size_t nw = p11.empty() ? 0 : p11[0].size();

    auto closed_at = [&](double w) -> Eigen::MatrixXcd {
        const Eigen::MatrixXcd P11 = eval_tfm(p11, w);
        const Eigen::MatrixXcd P12 = eval_tfm(p12, w);
        const Eigen::MatrixXcd P21 = eval_tfm(p21, w);
        const Eigen::MatrixXcd P22 = eval_tfm(p22, w);
        const Eigen::MatrixXcd K = eval_tfm(controller, w);
        const Eigen::Index ny = P22.rows();
        const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(ny, ny) - P22 * K;
        return P11 + P12 * K * M.partialPivLu().solve(P21);
    };

    NormCheckReport rep;
    rep.channel_peaks.assign(nz, std::vector<ChannelPeak>(nw));
    const auto grid = log_grid(1e-4, 1e4, 60);
    for (double w : grid) {
        const Eigen::MatrixXcd F = closed_at(w);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(F);
        const double s = svd.singularValues()(0);
        if (s > rep.gamma) {
            rep.gamma = s;
            rep.peak_omega = w;
        }
        for (size_t i = 0; i < nz; ++i)
            for (size_t j = 0; j < nw; ++j) {
                const double a = std::abs(F(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)));
                if (a > rep.channel_peaks[i][j].peak) rep.channel_peaks[i][j] = {w, a};
            }
    }
    // Golden refinement of the sigma_max peak.
    double a = std::log(rep.peak_omega / 1.5), b = std::log(rep.peak_omega * 1.5);
    constexpr double kGolden = 0.6180339887498949;
    auto f = [&](double lw) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(closed_at(std::exp(lw)));
        return svd.singularValues()(0);
    };
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    if (std::max(f1, f2) > rep.gamma) {
        rep.gamma = std::max(f1, f2);
        rep.peak_omega = std::exp(f1 > f2 ? x1 : x2);
    }
    return rep;
}

NormCheckReport closed_loop_norm_check(const GeneralizedPlant& p, const ControllerSet& c) {
    // Well-posedness: I - P22 C must be invertible as a rational matrix;
    // here det(I - P22 C) = 1 - C2 G~, checked at a probe point.
    const TfMatrix K = {{c.c_inf_1, c.c_inf_2}};
    const RationalTF& g_tilde = p.p22[1][0];
    const Complex probe =
        1.0 - c.c_inf_2.eval_rational(Complex(0.7, 1.3)) * g_tilde.eval_rational(Complex(0.7, 1.3));
    if (std::abs(probe) < 1e-12) throw Error("closed_loop_norm_check: ill-posed closure");

    NormCheckReport rep = lft_norm(p.p11, p.p12, p.p21, p.p22, K);

    // Internal stability of the closure (char. polynomial of 1 - C2 G~).
    const Polynomial ch =
        c.c_inf_2.den() * g_tilde.den() - c.c_inf_2.num() * g_tilde.num();
    for (const Complex& r : ch.roots())
        if (r.real() >= 1e-9 * (1.0 + std::abs(r))) rep.stable_closure = false;
    return rep;
}

SensitivityYd::SensitivityYd(RationalTF controller, const PlantParams& p, double tau)
    : g_yu_(plant_tf(p, 0.0)), c_(std::move(controller)), tau_(tau) {
    if (c_.delay() != 0.0) throw NonzeroDelayError("sensitivity_yd: controller must be rational");
    if (!(tau_ >= 0.0)) throw Error("sensitivity_yd: tau must be nonnegative");
}

SensitivityYd sensitivity_yd(const RationalTF& c, const PlantParams& p, double tau) {
    return SensitivityYd(c, p, tau);
}

Complex SensitivityYd::eval(double omega, LoopDelayModel model) const {
    const Complex g = g_yu_.eval(omega);
    Complex gd;
    switch (model) {
        case LoopDelayModel::exact: gd = std::polar(1.0, -omega * tau_); break;
        case LoopDelayModel::pade1: gd = pade_delay(tau_, 1).eval(omega); break;
        case LoopDelayModel::pade2: gd = pade_delay(tau_, 2).eval(omega); break;
    }
    return g / (1.0 + c_.eval(omega) * gd * g);
}

double SensitivityYd::peak(double* peak_omega, LoopDelayModel model) const {
    const auto grid = log_grid(1e-3, 1e3, 200);
    double best = 0.0, wbest = grid[0];
    for (double w : grid) {
        const double a = std::abs(eval(w, model));
        if (a > best) {
            best = a;
            wbest = w;
        }
    }
    double a = std::log(wbest / 1.3), b = std::log(wbest * 1.3);
    constexpr double kGolden = 0.6180339887498949;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = std::abs(eval(std::exp(x1), model)), f2 = std::abs(eval(std::exp(x2), model));
    double prev = std::max(f1, f2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = std::abs(eval(std::exp(x2), model));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = std::abs(eval(std::exp(x1), model));
        }
        const double cur = std::max(f1, f2);
        if (it > 8 && std::abs(cur - prev) <= 1e-6 * cur) break;
        prev = cur;
    }
    best = std::max(best, prev);
    if (peak_omega) *peak_omega = std::exp(f1 > f2 ? x1 : x2);
    return best;
}

int SensitivityYd::nyquist_winding() const {
    // Loop transfer with the exact delay.
    const RationalTF l_rat = c_ * g_yu_;
    auto loop = [&](double w) { return l_rat.eval(w) * std::polar(1.0, -w * tau_); };

    int n_origin = 0;
    for (const Complex& p : l_rat.den().roots())
        if (std::abs(p) < 1e-9) ++n_origin;

    // Accumulated argument of 1 + L along omega in [1e-4, 1e4], step-refined
    // so no increment exceeds 30 degrees.
    double w = 1e-4;
    const double w_end = 1e4;
    Complex f_prev = 1.0 + loop(w);
    double acc = 0.0;
    double step = 1.01;
    while (w < w_end) {
        double w_next = std::min(w * step, w_end);
        Complex f_next = 1.0 + loop(w_next);
        double d = std::arg(f_next / f_prev);
        int guard = 0;
        while (std::abs(d) > std::numbers::pi / 6.0 && guard++ < 40) {
            w_next = std::sqrt(w * w_next);
            f_next = 1.0 + loop(w_next);
            d = std::arg(f_next / f_prev);
        }
        acc += d;
        w = w_next;
        f_prev = f_next;
    }
    // Conjugate symmetry doubles the sweep; each origin pole closes the
    // contour with a half clockwise turn at infinity radius.
    const double total = 2.0 * acc - n_origin * std::numbers::pi;
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

FrequencyResponse ff_transfer(const RationalTF& c_fo, const PlantParams& p,
                              const std::vector<double>& grid) {
    const RationalTF gyu = plant_tf(p, 0.0);
    FrequencyResponse fr;
    fr.omega = grid;
    fr.values.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        fr.values[i] = c_fo.eval(w) + std::polar(1.0, -w * p.tau_n) / gyu.eval(w);
    }
    return fr;
}

StateSpaceModel realize_two_dof(const ControllerSet& set, const PlantParams& p) {
    // The published coefficients are rounded; scale the reference channel so
    // C1(0) = -C2(0) holds exactly and the shared integrator is drift-free.
    const double n1_0 = set.c_inf_1.num().coeff(0);
    const double n2_0 = set.c_inf_2.num().coeff(0);
    if (n1_0 == 0.0) throw Error("realize_two_dof: reference channel has a zero at the origin");
    const double dc_match = -n2_0 / n1_0;

    // Balanced coordinates: the raw observer form carries the denominator
    // coefficients (spanning twelve orders of magnitude) in one row.
    StateSpaceModel miso = balance_realization(miso_from_common_den(
        {dc_match * set.c_inf_1.num(), set.c_inf_2.num()}, set.c_inf_1.den()));

    // Wiring validation: u = C1 r + C2 y must stabilize the nominal Pade-2
    // closed loop (this pins the sign convention of the block diagram).
    const RationalTF g_tilde = plant_tf(p, 0.0) * pade_delay(p.tau_n, 2);
    const Polynomial ch = set.c_inf_2.den() * g_tilde.den() - set.c_inf_2.num() * g_tilde.num();
    for (const Complex& r : ch.roots())
        if (r.real() >= 1e-9 * (1.0 + std::abs(r)))
            throw UnstableSystemError("two-DOF wiring u = C1 r + C2 y fails nominal stability");
    return miso;
}

namespace {

nlohmann::json zpk_json_obj(const RationalTF& g) {
    nlohmann::json j;
    const PolesZeros pz = poles_zeros(g);
    j["gain"] = g.num().leading() / g.den().leading();
    j["zeros"] = nlohmann::json::array();
    for (const Complex& z : pz.zeros) j["zeros"].push_back({z.real(), z.imag()});
    j["poles"] = nlohmann::json::array();
    for (const Complex& pole : pz.poles) j["poles"].push_back({pole.real(), pole.imag()});
    j["delay"] = g.delay();
    return j;
}

}  // namespace

std::string to_zpk_json(const RationalTF& g) { return zpk_json_obj(g).dump(2); }

std::string controller_set_to_zpk_json(const ControllerSet& set) {
    nlohmann::json j;
    j["c_inf_1"] = zpk_json_obj(set.c_inf_1);
    j["c_inf_2"] = zpk_json_obj(set.c_inf_2);
    j["c_fo"] = zpk_json_obj(set.c_fo);
    return j.dump(2);
}

}  // namespace tmoctl
