#pragma once

#include <Eigen/Dense>

#include "tmoctl/state_space.hpp"

namespace tmoctl {

/// Discrete state-transition form x+ = Ad x + Bd u, y = Cd x + Dd u.
struct DiscreteStateSpace {
    Eigen::MatrixXd Ad, Bd, Cd, Dd;
    double t_s = 0.0;

    int order() const { return static_cast<int>(Ad.rows()); }
    int inputs() const { return static_cast<int>(Bd.cols()); }

    /// One update: returns y(k) and advances the state in place.
    double step(Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

    /// Frequency response of the discrete map at z = e^{j w t_s}.
    Complex eval(double omega) const;
};

/// Bilinear (trapezoidal) map s -> (2/Ts)(z-1)/(z+1) applied through the
/// state-space realization. Requires a proper, delay-free system.
DiscreteStateSpace discretize_controller(const RationalTF& c, double t_s);
DiscreteStateSpace discretize_ss(const StateSpaceModel& sys, double t_s);

}  // namespace tmoctl
