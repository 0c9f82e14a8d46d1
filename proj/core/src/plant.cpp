#include "tmoctl/plant.hpp"

#include <cmath>
#include <numbers>

#include "tmoctl/errors.hpp"

namespace tmoctl {

void PlantParams::validate() const {
    if (!(k > 0 && m > 0 && M > 0 && eta > 0 && zeta > 0 && psi > 0 && R > 0 && g >= 0))
        throw Error("PlantParams: physical constants must be positive");
    if (!(zeta < eta / 100.0))
        throw Error("PlantParams: expected zeta << eta (zeta < eta/100)");
    if (!(tau_n >= 0.0)) throw Error("PlantParams: tau_n must be nonnegative");
    if (!(x1_range[1] > x1_range[0])) throw Error("PlantParams: bad x1_range");
    if (!(u_range[1] > u_range[0])) throw Error("PlantParams: bad u_range");
}

PlantParams PlantParams::nominal() {
    PlantParams p;
    p.uss_fit = {gravity_feedforward(p), 0.0, 0.0};
    p.tau_n = 2.0 * std::numbers::pi / plant_omega0(p);
    p.validate();
    return p;
}

PlantRealization build_plant(const PlantParams& p) {
    p.validate();
    Eigen::MatrixXd A(4, 4);
    A << 0.0, 1.0, 0.0, 0.0,                                        //
        -p.k / p.m, -(p.eta + p.zeta) / p.m, p.k / p.m, p.zeta / p.m,  //
        0.0, 0.0, 0.0, 1.0,                                          //
        p.k / p.M, p.zeta / p.M, -p.k / p.M, -p.zeta / p.M;
    Eigen::MatrixXd B(4, 1);
    B << 0.0, p.psi / (p.R * p.m), 0.0, 0.0;
    Eigen::MatrixXd C(1, 4);
    C << 0.0, 0.0, 1.0, 0.0;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(1, 1);
    Eigen::MatrixXd E(4, 2);
    E << 0.0, 0.0, 1.0 / p.m, 0.0, 0.0, 0.0, 0.0, 1.0 / p.M;
    PlantRealization r;
    r.sys = StateSpaceModel(A, B, C, D);
    r.E = E;
    return r;
}

double plant_omega0(const PlantParams& p) {
    const PlantRealization r = build_plant(p);
    double w0 = 0.0;
    for (const Complex& ev : r.sys.eigenvalues()) w0 = std::max(w0, std::abs(ev.imag()));
    if (w0 == 0.0) throw Error("plant has no resonant pole pair (degenerate damping?)");
    return w0;
}

RationalTF plant_tf(const PlantParams& p, double tau_factor) {
    const PlantRealization r = build_plant(p);
    RationalTF gyu = ss_to_tf(r.sys);
    const double tau = tau_factor * p.tau_n;
    if (tau == 0.0) return gyu;
    return gyu.with_delay(tau);
}

double input_gain(const PlantParams& p, double x1) {
    const double uss = p.uss_fit[0] + p.uss_fit[1] * x1 + p.uss_fit[2] * x1 * x1;
    if (!(uss > 0.0)) throw Error("input_gain: u_ss(x1) must be positive");
    return (p.m + p.M) * p.g * p.R / (p.psi * uss);
}

double mean_inverse_gain(const PlantParams& p) {
    constexpr int n = 1001;
    const double a = p.x1_range[0], b = p.x1_range[1];
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x1 = a + (b - a) * i / (n - 1);
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w / input_gain(p, x1);
    }
    return acc / (n - 1);
}

double gravity_feedforward(const PlantParams& p) { return (p.m + p.M) * p.g * p.R / p.psi; }

}  // namespace tmoctl
