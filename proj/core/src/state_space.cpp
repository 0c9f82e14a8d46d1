#include "tmoctl/state_space.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tmoctl/errors.hpp"

namespace tmoctl {

StateSpaceModel::StateSpaceModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                                 Eigen::MatrixXd d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
    if (A.rows() != A.cols()) throw Error("state matrix must be square");
    if (B.rows() != A.rows()) throw Error("B row count must match state dimension");
    if (C.cols() != A.cols()) throw Error("C column count must match state dimension");
    if (D.rows() != C.rows() || D.cols() != B.cols()) throw Error("D dimensions inconsistent");
}

Eigen::MatrixXcd StateSpaceModel::eval(double omega) const {
    const int n = order();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n) * Complex(0.0, omega) - A.cast<Complex>();
    return C.cast<Complex>() * M.partialPivLu().solve(B.cast<Complex>()) + D.cast<Complex>();
}

std::vector<Complex> StateSpaceModel::eigenvalues() const {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    std::vector<Complex> ev(static_cast<size_t>(order()));
    for (int i = 0; i < order(); ++i) ev[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return ev;
}

bool StateSpaceModel::is_hurwitz(double tol) const {
    for (const Complex& ev : eigenvalues())
        if (ev.real() >= -tol) return false;
    return true;
}

StateSpaceModel tf_to_ss(const RationalTF& g) {
    if (g.delay() != 0.0)
        throw NonzeroDelayError("tf_to_ss requires a delay-free system");
    return miso_from_common_den({g.num()}, g.den());
}

StateSpaceModel miso_from_common_den(const std::vector<Polynomial>& nums, const Polynomial& den) {
    const int n = den.degree();
    const int m = static_cast<int>(nums.size());
    const double lead = den.leading();

    Eigen::MatrixXd D(1, m);
    Eigen::MatrixXd Bq(n, m);  // numerator coefficients of the strictly proper parts
    for (int j = 0; j < m; ++j) {
        const Polynomial& numj = nums[static_cast<size_t>(j)];
        if (numj.degree() > n)
            throw ImproperSystemError("tf_to_ss requires deg num <= deg den");
        // Split off the feedthrough: num = d * den + rem with deg rem < n.
        const double dterm = (numj.degree() == n) ? numj.leading() / lead : 0.0;
        D(0, j) = dterm;
        for (int k = 0; k < n; ++k) Bq(k, j) = (numj.coeff(k) - dterm * den.coeff(k)) / lead;
    }

    if (n == 0) {
        return {Eigen::MatrixXd::Zero(0, 0), Eigen::MatrixXd::Zero(0, m),
                Eigen::MatrixXd::Zero(1, 0), D};
    }

    // Controllable canonical form of the SIMO transpose, then the dual:
    // A = Ac^T with the companion structure laid out for a single output.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) A(i, i + 1) = 1.0;
    for (int k = 0; k < n; ++k) A(n - 1, k) = -den.coeff(k) / lead;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(1, n);
    C(0, 0) = 1.0;

    if (m == 1) {
        // SISO controllable canonical: states are the phase variables.
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
        B(n - 1, 0) = 1.0;
        Eigen::MatrixXd Cs(1, n);
        for (int k = 0; k < n; ++k) Cs(0, k) = Bq(k, 0);
        return {A, B, Cs, D};
    }

    // Multi-input single-output: transpose of the SIMO controllable form.
    Eigen::MatrixXd At = A.transpose();
    Eigen::MatrixXd Bt = Bq;              // (n x m)
    Eigen::MatrixXd Ct = Eigen::MatrixXd::Zero(1, n);
    Ct(0, n - 1) = 1.0;
    return {At, Bt, Ct, D};
}

RationalTF ss_to_tf(const StateSpaceModel& m, int output, int input) {
    if (output < 0 || output >= m.outputs() || input < 0 || input >= m.inputs())
        throw Error("ss_to_tf: output/input index out of range");
    const int n = m.order();
    const Eigen::RowVectorXd c = m.C.row(output);
    const Eigen::VectorXd b = m.B.col(input);
    const double d = m.D(output, input);
    if (n == 0) return RationalTF::constant(d);

    // Spectral scaling keeps the Faddeev powers O(1).
    double sigma = m.A.cwiseAbs().rowwise().sum().maxCoeff();
    if (sigma <= 0.0 || !std::isfinite(sigma)) sigma = 1.0;
    const Eigen::MatrixXd As = m.A / sigma;

    // Faddeev-LeVerrier: den(s) = det(sI - As), num(s) = c adj(sI - As) b,
    // both in the scaled variable, unscaled afterwards.
    std::vector<double> den(static_cast<size_t>(n) + 1, 0.0);
    std::vector<double> num(static_cast<size_t>(n), 0.0);
    den[static_cast<size_t>(n)] = 1.0;
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        num[static_cast<size_t>(n - k)] = c * R * b;
        const Eigen::MatrixXd AR = As * R;
        const double coef = -AR.trace() / k;
        den[static_cast<size_t>(n - k)] = coef;
        R = AR + coef * Eigen::MatrixXd::Identity(n, n);
    }
    // Unscale: det(sI - A) = sigma^n det((s/sigma)I - As), and the adjugate
    // picks up sigma^{n-1}; coefficient of s^j gains sigma^{n-j} in both.
    double p = 1.0;
    for (int k = 0; k <= n; ++k) {
        const size_t idx = static_cast<size_t>(n - k);
        den[idx] *= p;
        if (k >= 1) num[idx] *= p / sigma;
        p *= sigma;
    }
    Polynomial dp(std::move(den));
    Polynomial np(std::move(num));
    if (d != 0.0) np += d * dp;
    return {std::move(np), std::move(dp)};
}

StateSpaceModel balance_realization(const StateSpaceModel& m) {
    const int n = m.order();
    StateSpaceModel out = m;
    bool converged = false;
    for (int pass = 0; pass < 50 && !converged; ++pass) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            // Scaling state i by f multiplies column i (and C's column) by f
            // and divides row i (and B's row) by f.
            double col = out.C.col(i).template lpNorm<1>();
            double row = out.B.row(i).template lpNorm<1>();
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(out.A(j, i));
                row += std::abs(out.A(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            double f = 1.0;
            while (col < 0.5 * row) {
                col *= 2.0;
                row *= 0.5;
                f *= 2.0;
            }
            while (col >= 2.0 * row) {
                col *= 0.5;
                row *= 2.0;
                f *= 0.5;
            }
            if (f != 1.0) {
                converged = false;
                out.A.col(i) *= f;
                out.A.row(i) /= f;
                out.C.col(i) *= f;
                out.B.row(i) /= f;
            }
        }
    }
    return out;
}

StateSpaceModel ss_difference(const StateSpaceModel& a, const StateSpaceModel& b) {
    if (a.inputs() != b.inputs() || a.outputs() != b.outputs())
        throw Error("ss_difference: dimension mismatch");
    const int na = a.order(), nb = b.order();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(na + nb, na + nb);
    A.topLeftCorner(na, na) = a.A;
    A.bottomRightCorner(nb, nb) = b.A;
    Eigen::MatrixXd B(na + nb, a.inputs());
    B.topRows(na) = a.B;
    B.bottomRows(nb) = b.B;
    Eigen::MatrixXd C(a.outputs(), na + nb);
    C.leftCols(na) = a.C;
    C.rightCols(nb) = -b.C;
    return {A, B, C, a.D - b.D};
}

}  // namespace tmoctl
