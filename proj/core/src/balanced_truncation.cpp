#include "tmoctl/balanced_truncation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>

#include "tmoctl/errors.hpp"
#include "tmoctl/lyapunov.hpp"

namespace tmoctl {

namespace {

// Symmetric square-root factor L with W = L L^T, eigenvalues clamped at
// zero (the Gramians are PSD up to roundoff).
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& W) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (W + W.transpose()));
    if (es.info() != Eigen::Success) throw Error("balanced_truncate: Gramian eigensolve failed");
    const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < -1e-10 * scale)
            throw Error("balanced_truncate: Gramian is not positive semidefinite");
    Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal();
}

}  // namespace

GramianPair gramians(const StateSpaceModel& sys) {
    GramianPair g;
    g.controllability = lyap_solve(sys.A, sys.B * sys.B.transpose());
    g.observability = lyap_solve(sys.A.transpose(), sys.C.transpose() * sys.C);
    return g;
}

std::string HankelSpectrum::to_json() const {
    std::string out = "[";
    char buf[64];
    for (size_t i = 0; i < singular_values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s%.12g", i ? "," : "", singular_values[i]);
        out += buf;
    }
    out += "]";
    return out;
}

BalancedTruncation balanced_truncate(const StateSpaceModel& sys, int target_order) {
    const int n = sys.order();
    if (target_order < 1 || target_order > n)
        throw Error("balanced_truncate: target order out of range");
    if (!sys.is_hurwitz())
        throw UnstableSystemError(
            "balanced_truncate requires a stable model; shift integrators to -eps first");

    const GramianPair W = gramians(sys);
    const Eigen::MatrixXd Lc = psd_factor(W.controllability);
    const Eigen::MatrixXd Lo = psd_factor(W.observability);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Lo.transpose() * Lc,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();

    BalancedTruncation out;
    out.spectrum.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    if (sigma(0) > 0.0 && sigma(n - 1) / sigma(0) < 1e-12) out.spectrum.near_singular = true;

    // T = Lc V S^{-1/2}, Tinv = S^{-1/2} U^T Lo^T balance both Gramians to diag(sigma).
    Eigen::VectorXd shalf = sigma.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd T = Lc * svd.matrixV() * shalf.asDiagonal();
    const Eigen::MatrixXd Tinv = shalf.asDiagonal() * svd.matrixU().transpose() * Lo.transpose();

    const Eigen::MatrixXd Ab = Tinv * sys.A * T;
    const Eigen::MatrixXd Bb = Tinv * sys.B;
    const Eigen::MatrixXd Cb = sys.C * T;

    const int r = target_order;
    out.model = StateSpaceModel(Ab.topLeftCorner(r, r), Bb.topRows(r), Cb.leftCols(r), sys.D);
    for (int i = r; i < n; ++i) out.error_bound += 2.0 * sigma(i);
    return out;
}

RationalTF shift_origin_poles(const RationalTF& g, double eps) {
    if (!(eps > 0.0)) throw Error("shift_origin_poles: eps must be positive");
    std::vector<Complex> poles = g.den().roots();
    const double scale = std::max(1.0, std::abs(poles.empty() ? 1.0 : std::abs(poles[0])));
    bool any = false;
    for (Complex& p : poles) {
        if (std::abs(p) <= 1e-9 * scale) {
            p = Complex(-eps, 0.0);
            any = true;
        }
    }
    if (!any) return g;
    Polynomial den = Polynomial::from_roots(poles, g.den().leading());
    return {g.num(), std::move(den), g.delay()};
}

}  // namespace tmoctl
