#include "tmoctl/oustaloup.hpp"

#include <cmath>
#include <vector>

#include "tmoctl/errors.hpp"

namespace tmoctl {

void OustaloupSpec::validate() const {
    if (!(omega_l > 0.0 && omega_h > omega_l)) throw Error("oustaloup: need 0 < omega_l < omega_h");
    if (!(std::abs(alpha) <= 1.0)) throw Error("oustaloup: |alpha| must be <= 1");
    if (n_cells < 1) throw Error("oustaloup: N must be >= 1");
}

namespace {

struct PoleZeroSet {
    std::vector<double> zeros;  // positive corner frequencies
    std::vector<double> poles;
};

PoleZeroSet recursion_corners(double alpha, double wl, double wh, int n_cells) {
    PoleZeroSet s;
    const int count = 2 * n_cells + 1;
    const double ratio = wh / wl;
    for (int k = 0; k < count; ++k) {
        s.zeros.push_back(wl * std::pow(ratio, (k + (1.0 - alpha) / 2.0) / count));
        s.poles.push_back(wl * std::pow(ratio, (k + (1.0 + alpha) / 2.0) / count));
    }
    return s;
}

}  // namespace

RationalTF oustaloup(const OustaloupSpec& spec) {
    spec.validate();
    if (spec.alpha == 0.0) return RationalTF::constant(1.0);

    const PoleZeroSet pz = recursion_corners(spec.alpha, spec.omega_l, spec.omega_h, spec.n_cells);
    Polynomial num = Polynomial::constant(1.0);
    Polynomial den = Polynomial::constant(1.0);
    for (double w : pz.zeros) num = num * Polynomial{w, 1.0};
    for (double w : pz.poles) den = den * Polynomial{w, 1.0};
    RationalTF h{std::move(num), std::move(den)};

    const double wu = std::sqrt(spec.omega_l * spec.omega_h);
    const double target = std::pow(wu, spec.alpha);
    const double have = std::abs(h.eval(wu));
    return (target / have) * h;
}

void CompensatorSpec::validate() const {
    if (!(z > 0.0)) throw Error("partial_compensator: z must be positive");
    if (nu < 2) throw Error("partial_compensator: nu must be >= 2");
    if (!(omega_l > 0.0 && omega_h > omega_l))
        throw Error("partial_compensator: need 0 < omega_l < omega_h");
    if (n_cells < 1) throw Error("partial_compensator: N must be >= 1");
}

Compensator partial_compensator(const CompensatorSpec& spec) {
    spec.validate();
    const double beta = 1.0 - 1.0 / spec.nu;

    const PoleZeroSet pz = recursion_corners(beta, spec.omega_l, spec.omega_h, spec.n_cells);

    // Q = c (s+z) / H_beta(s+z): the shifted recursion corners land at
    // -(z + w_k), strictly negative real.
    Polynomial q_num{spec.z, 1.0};
    for (double w : pz.poles) q_num = q_num * Polynomial{spec.z + w, 1.0};
    Polynomial q_den = Polynomial::constant(1.0);
    for (double w : pz.zeros) q_den = q_den * Polynomial{spec.z + w, 1.0};

    // DC normalization Q(0) = 1.
    const double c = q_den.coeff(0) / q_num.coeff(0);
    RationalTF q{c * q_num, q_den};
    RationalTF q_inv{(1.0 / c) * q_den, std::move(q_num)};

    Compensator comp;
    comp.band_contains_z = (spec.z >= spec.omega_l && spec.z <= spec.omega_h);
    comp.q = std::move(q);
    comp.q_inverse = std::move(q_inv);
    return comp;
}

}  // namespace tmoctl
