#include "tmoctl/feedforward.hpp"

#include <cmath>

#include "tmoctl/errors.hpp"

namespace tmoctl {

FeedforwardPlan build_feedforward_plan(const ReferenceSpec& ref, const PlantParams& p,
                                       int n_samples, double t_s, double shift) {
    if (n_samples < 3 || !(t_s > 0.0)) throw Error("build_feedforward_plan: bad grid");
    p.validate();

    FeedforwardPlan plan;
    plan.t_s = t_s;
    plan.shift = std::round(shift / t_s) * t_s;  // whole samples, so the ring
                                                 // buffer and the shift cancel
                                                 // exactly at the nominal delay
    const auto n = static_cast<size_t>(n_samples);
    plan.r.resize(n);
    plan.r1.resize(n);
    plan.r2.resize(n);
    plan.r3.resize(n);
    plan.x_star.resize(n);

    std::vector<double> w(n), wd(n);
    for (size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * t_s + plan.shift;
        plan.r[i] = transition_reference(ref, t, 0);
        plan.r1[i] = transition_reference(ref, t, 1);
        plan.r2[i] = transition_reference(ref, t, 2);
        plan.r3[i] = transition_reference(ref, t, 3);
        // Load equation auxiliary: k x1 + zeta x2 = w.
        w[i] = p.M * plan.r2[i] + p.k * plan.r[i] + p.zeta * plan.r1[i];
        wd[i] = p.M * plan.r3[i] + p.k * plan.r1[i] + p.zeta * plan.r2[i];
    }
    for (size_t i = 0; i < n; ++i) {
        // Central difference supplies the w'' term of the fast-manifold series.
        double wdd;
        if (i == 0)
            wdd = (wd[1] - wd[0]) / t_s;
        else if (i + 1 == n)
            wdd = (wd[n - 1] - wd[n - 2]) / t_s;
        else
            wdd = (wd[i + 1] - wd[i - 1]) / (2.0 * t_s);
        const double x1 = w[i] / p.k - p.zeta * wd[i] / (p.k * p.k);
        const double x2 = wd[i] / p.k - p.zeta * wdd / (p.k * p.k);
        plan.x_star[i] = {x1, x2, plan.r[i], plan.r1[i]};
    }
    return plan;
}

std::vector<double> feedforward_ustar(const FeedforwardPlan& plan, const PlantParams& p) {
    if (plan.x_star.size() != plan.r3.size() || plan.x_star.empty())
        throw Error("feedforward_ustar: empty or inconsistent plan");
    const PlantRealization plant = build_plant(p);
    const Eigen::MatrixXd& A = plant.sys.A;
    const Eigen::RowVectorXd c = plant.sys.C.row(0);
    const Eigen::VectorXd b = plant.sys.B.col(0);
    const Eigen::RowVectorXd cA3 = c * A * A * A;
    const double ca2b = c * A * A * b;
    if (std::abs(ca2b) < 1e-30)
        throw Error("feedforward_ustar: C A^2 B vanishes (zeta = 0 gives relative degree 4)");

    std::vector<double> u(plan.x_star.size());
    for (size_t i = 0; i < u.size(); ++i) {
        const auto& xs = plan.x_star[i];
        const double cax = cA3(0) * xs[0] + cA3(1) * xs[1] + cA3(2) * xs[2] + cA3(3) * xs[3];
        u[i] = (-cax + plan.r3[i]) / ca2b;
    }
    return u;
}

}  // namespace tmoctl
