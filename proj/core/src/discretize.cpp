#include "tmoctl/discretize.hpp"

#include <cmath>

#include "tmoctl/errors.hpp"

namespace tmoctl {

double DiscreteStateSpace::step(Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    const double y = (Cd * x + Dd * u)(0);
    x = Ad * x + Bd * u;
    return y;
}

Complex DiscreteStateSpace::eval(double omega) const {
    const Complex z = std::polar(1.0, omega * t_s);
    const int n = order();
    Eigen::MatrixXcd M = z * Eigen::MatrixXcd::Identity(n, n) - Ad.cast<Complex>();
    const Eigen::MatrixXcd v =
        Cd.cast<Complex>() * M.partialPivLu().solve(Bd.cast<Complex>()) + Dd.cast<Complex>();
    return v(0, 0);
}

DiscreteStateSpace discretize_ss(const StateSpaceModel& sys, double t_s) {
    if (!(t_s > 0.0)) throw Error("discretize: sample time must be positive");
    const int n = sys.order();
    const double a = 0.5 * t_s;
    const Eigen::MatrixXd M =
        (Eigen::MatrixXd::Identity(n, n) - a * sys.A).partialPivLu().solve(
            Eigen::MatrixXd::Identity(n, n));
    DiscreteStateSpace d;
    d.t_s = t_s;
    d.Ad = M * (Eigen::MatrixXd::Identity(n, n) + a * sys.A);
    d.Bd = t_s * (M * M * sys.B);
    d.Cd = sys.C;
    d.Dd = sys.D + a * (sys.C * M * sys.B);
    return d;
}

DiscreteStateSpace discretize_controller(const RationalTF& c, double t_s) {
    if (!c.proper()) throw ImproperSystemError("discretize_controller: controller must be proper");
    return discretize_ss(balance_realization(tf_to_ss(c)), t_s);
}

}  // namespace tmoctl
