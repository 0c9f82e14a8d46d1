#include "tmoctl/hinf_norm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "tmoctl/errors.hpp"

namespace tmoctl {

namespace {

double sigma_max(const Eigen::MatrixXcd& M) {
    if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

double sigma_max_real(const Eigen::MatrixXd& M) {
    if (M.size() == 0) return 0.0;
    if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues()(0);
}

double gain_at(const StateSpaceModel& sys, double omega) { return sigma_max(sys.eval(omega)); }

// gamma is a strict upper bound iff the Hamiltonian has no eigenvalues on
// the imaginary axis.
bool is_upper_bound(const StateSpaceModel& sys, double gamma) {
    const int n = sys.order();
    const int m = sys.inputs();
    const int p = sys.outputs();
    const Eigen::MatrixXd R =
        gamma * gamma * Eigen::MatrixXd::Identity(m, m) - sys.D.transpose() * sys.D;
    const Eigen::LDLT<Eigen::MatrixXd> Rf(R);
    if (Rf.info() != Eigen::Success || !Rf.isPositive()) return false;
    const Eigen::MatrixXd Rinv = Rf.solve(Eigen::MatrixXd::Identity(m, m));
    const Eigen::MatrixXd Abar = sys.A + sys.B * Rinv * sys.D.transpose() * sys.C;
    Eigen::MatrixXd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = Abar;
    H.topRightCorner(n, n) = sys.B * Rinv * sys.B.transpose();
    H.bottomLeftCorner(n, n) =
        -sys.C.transpose() *
        (Eigen::MatrixXd::Identity(p, p) + sys.D * Rinv * sys.D.transpose()) * sys.C;
    H.bottomRightCorner(n, n) = -Abar.transpose();

    Eigen::EigenSolver<Eigen::MatrixXd> es(H, false);
    if (es.info() != Eigen::Success) throw Error("hinf_norm: Hamiltonian eigensolve failed");
    for (int i = 0; i < 2 * n; ++i) {
        const Complex ev = es.eigenvalues()(i);
        if (std::abs(ev.real()) <= 1e-8 * (1.0 + std::abs(ev))) return false;
    }
    return true;
}

void check_stability_ss(const StateSpaceModel& sys) {
    for (const Complex& ev : sys.eigenvalues()) {
        if (ev.real() >= 0.0) {
            if (ev.real() <= 1e-9 * (1.0 + std::abs(ev)))
                throw MarginallyStableError("hinf_norm: pole on the imaginary axis");
            throw UnstableSystemError("hinf_norm: system is unstable");
        }
    }
}

}  // namespace

double hinf_norm(const StateSpaceModel& sys_in, double rel_tol) {
    if (sys_in.order() == 0) return sigma_max_real(sys_in.D);
    // Companion-form realizations of wide-spread systems condition the
    // Hamiltonian eigenproblem poorly; diagonal balancing fixes that.
    const StateSpaceModel sys = balance_realization(sys_in);
    check_stability_ss(sys);

    // Lower bound from frequency probes: DC, the high-frequency limit, and
    // the resonant candidates given by the eigenvalue imaginary parts.
    std::vector<double> probes{0.0};
    double scale_min = std::numeric_limits<double>::infinity(), scale_max = 0.0;
    for (const Complex& ev : sys.eigenvalues()) {
        const double a = std::abs(ev);
        scale_min = std::min(scale_min, a);
        scale_max = std::max(scale_max, a);
        if (std::abs(ev.imag()) > 1e-12 * a) probes.push_back(std::abs(ev.imag()));
    }
    for (double f = 0.01; f <= 100.0; f *= 3.0) {
        probes.push_back(f * scale_min);
        probes.push_back(f * scale_max);
    }
    double lo = sigma_max_real(sys.D);
    for (double w : probes) lo = std::max(lo, gain_at(sys, w));
    if (lo == 0.0) return 0.0;

    double hi = 2.0 * lo;
    int guard = 0;
    while (!is_upper_bound(sys, hi)) {
        hi *= 2.0;
        if (++guard > 60) throw Error("hinf_norm: no finite upper bound found");
    }
    while ((hi - lo) > rel_tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (is_upper_bound(sys, mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double hinf_norm(const RationalTF& g, double rel_tol) {
    if (g.is_zero()) return 0.0;
    const RationalTF r = g.reduced(1e-9);
    for (const Complex& p : r.den().roots()) {
        if (p.real() >= 0.0) {
            if (p.real() <= 1e-9 * (1.0 + std::abs(p)))
                throw MarginallyStableError("hinf_norm: pole on the imaginary axis");
            throw UnstableSystemError("hinf_norm: unstable transfer function");
        }
    }
    if (g.delay() > 0.0) {
        // The pure delay factor is all-pass; the supremum is taken on the
        // documented adaptive grid.
        return hinf_norm_gridsup(r.with_delay(0.0), std::min(rel_tol, 1e-6));
    }
    if (!r.proper()) throw ImproperSystemError("hinf_norm: improper system has unbounded gain");
    return hinf_norm(tf_to_ss(r.with_delay(0.0)), rel_tol);
}

double hinf_norm_gridsup(const RationalTF& g, double rel_refine) {
    if (g.is_zero()) return 0.0;
    const RationalTF r = g.with_delay(0.0);  // delay does not change magnitudes

    double root_min = std::numeric_limits<double>::infinity(), root_max = 0.0;
    auto absorb = [&](const std::vector<Complex>& roots) {
        for (const Complex& z : roots) {
            const double a = std::abs(z);
            if (a > 1e-12) {
                root_min = std::min(root_min, a);
                root_max = std::max(root_max, a);
            }
        }
    };
    absorb(r.den().roots());
    if (!r.num().is_zero() && r.num().degree() > 0) absorb(r.num().roots());
    if (!std::isfinite(root_min)) {
        root_min = 1.0;
        root_max = 1.0;
    }
    const double wlo = std::max(1e-6, 0.01 * root_min);
    const double whi = std::min(1e9, std::max(100.0 * root_max, wlo * 10.0));

    const double decades = std::log10(whi / wlo);
    const int npts = std::max(64, static_cast<int>(std::ceil(decades * 200.0)) + 1);
    std::vector<double> w(static_cast<size_t>(npts));
    std::vector<double> mag(static_cast<size_t>(npts));
    for (int i = 0; i < npts; ++i) {
        w[static_cast<size_t>(i)] =
            wlo * std::pow(whi / wlo, static_cast<double>(i) / (npts - 1));
        mag[static_cast<size_t>(i)] = std::abs(r.eval(w[static_cast<size_t>(i)]));
    }

    // Endpoint candidates: DC value and the high frequency limit.
    double best = std::abs(r.eval_rational(Complex(0.0, 0.0)));
    if (!std::isfinite(best)) best = 0.0;
    if (r.num().degree() == r.den().degree())
        best = std::max(best, std::abs(r.num().leading() / r.den().leading()));

    // Golden-section refinement around every interior local maximum.
    constexpr double kGolden = 0.6180339887498949;
    for (int i = 0; i < npts; ++i) {
        const bool left_ok = (i == 0) || mag[i] >= mag[i - 1];
        const bool right_ok = (i == npts - 1) || mag[i] >= mag[i + 1];
        if (!(left_ok && right_ok)) continue;
        double a = std::log((i == 0) ? w[0] * 0.5 : w[i - 1]);
        double b = std::log((i == npts - 1) ? w[static_cast<size_t>(npts - 1)] * 2.0 : w[i + 1]);
        double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
        double f1 = std::abs(r.eval(std::exp(x1))), f2 = std::abs(r.eval(std::exp(x2)));
        double prev = std::max(f1, f2);
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = std::abs(r.eval(std::exp(x2)));
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = std::abs(r.eval(std::exp(x1)));
            }
            const double cur = std::max(f1, f2);
            if (it > 8 && std::abs(cur - prev) <= rel_refine * std::max(cur, 1e-300)) break;
            prev = cur;
        }
        best = std::max(best, prev);
    }
    return best;
}

}  // namespace tmoctl
