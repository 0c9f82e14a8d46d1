#pragma once

#include <Eigen/Dense>

namespace tmoctl {

/// Solves A P + P A^T + Q = 0 for symmetric P by the Bartels-Stewart scheme
/// (complex Schur form of A, triangular back-substitution column by column).
/// A must be Hurwitz; the residual is verified against
/// 1e-8 (|A|_F |P|_F + |Q|_F) before returning.
Eigen::MatrixXd lyap_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

}  // namespace tmoctl
