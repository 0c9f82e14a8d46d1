#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

/// Continuous-time LTI realization dx = A x + B u, y = C x + D u.
struct StateSpaceModel {
    Eigen::MatrixXd A, B, C, D;

    StateSpaceModel() = default;
    StateSpaceModel(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd d);

    int order() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }

    /// Transfer matrix value C (jw I - A)^{-1} B + D.
    Eigen::MatrixXcd eval(double omega) const;

    std::vector<Complex> eigenvalues() const;
    bool is_hurwitz(double tol = 0.0) const;
};

/// Controllable canonical realization of a proper, delay-free SISO transfer
/// function. Throws ImproperSystemError / NonzeroDelayError.
StateSpaceModel tf_to_ss(const RationalTF& g);

/// Shared-state realization of a single-output bank [n_i(s)/den(s)], one
/// input per numerator (built as the dual of the SIMO controllable form).
StateSpaceModel miso_from_common_den(const std::vector<Polynomial>& nums, const Polynomial& den);

/// SISO slice (input j, output i) back to a transfer function via the
/// Faddeev-LeVerrier recursion on a spectrally scaled copy of A.
RationalTF ss_to_tf(const StateSpaceModel& m, int output = 0, int input = 0);

/// Series difference g1 - g2 as a block realization (used for reduction
/// error systems without forming high-order polynomials).
StateSpaceModel ss_difference(const StateSpaceModel& a, const StateSpaceModel& b);

/// Diagonal similarity scaling (powers of two) that equalizes the row/column
/// norms of [A B; C 0]. The transfer matrix is unchanged; the conditioning of
/// eigenvalue work on companion-form realizations improves dramatically.
StateSpaceModel balance_realization(const StateSpaceModel& m);

}  // namespace tmoctl
