#include "tmoctl/lyapunov.hpp"

#include <Eigen/Eigenvalues>

#include "tmoctl/errors.hpp"

namespace tmoctl {

Eigen::MatrixXd lyap_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
        throw Error("lyap_solve: A and Q must be square of equal size");
    const int n = static_cast<int>(A.rows());
    if (n == 0) return Eigen::MatrixXd();

    Eigen::ComplexSchur<Eigen::MatrixXd> schur(A, /*computeU=*/true);
    if (schur.info() != Eigen::Success) throw Error("lyap_solve: Schur decomposition failed");
    const Eigen::MatrixXcd& T = schur.matrixT();
    const Eigen::MatrixXcd& U = schur.matrixU();

    for (int i = 0; i < n; ++i)
        if (T(i, i).real() >= 0.0)
            throw NonHurwitzError("lyap_solve requires a Hurwitz state matrix");

    // T Y + Y T^H + F = 0 with F = U^H Q U; column k couples only to
    // columns j >= k of Y, so back-substitute from the last column.
    const Eigen::MatrixXcd F = U.adjoint() * Q * U;
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);
    for (int k = n - 1; k >= 0; --k) {
        Eigen::VectorXcd rhs = -F.col(k);
        for (int j = k + 1; j < n; ++j) rhs -= std::conj(T(k, j)) * Y.col(j);
        Eigen::MatrixXcd Tk = T;
        Tk.diagonal().array() += std::conj(T(k, k));
        Y.col(k) = Tk.triangularView<Eigen::Upper>().solve(rhs);
    }
    Eigen::MatrixXd P = (U * Y * U.adjoint()).real();
    P = 0.5 * (P + P.transpose()).eval();

    const double resid = (A * P + P * A.transpose() + Q).norm();
    const double bound = 1e-8 * (A.norm() * P.norm() + Q.norm());
    if (resid > std::max(bound, 1e-300))
        throw Error("lyap_solve: residual exceeds tolerance");
    return P;
}

}  // namespace tmoctl
