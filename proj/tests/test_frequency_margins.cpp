#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tmoctl/controllers.hpp"
#include "tmoctl/errors.hpp"
#include "tmoctl/frequency.hpp"
#include "tmoctl/margins.hpp"
#include "tmoctl/plant.hpp"
#include "test_util.hpp"

using namespace tmoctl;

TEST_CASE("freq_response basics") {
    // 1/s at w = 1 -> -j.
    const RationalTF integ{Polynomial{1.0}, Polynomial{0.0, 1.0}};
    const auto fr = freq_response(integ, {1.0});
    CHECK(std::abs(fr.values[0] - Complex(0.0, -1.0)) < 1e-15);

    // G(j w0): the delay only rotates the phase by -w0 tau.
    const PlantParams p = PlantParams::nominal();
    const double w0 = plant_omega0(p);
    const Complex gyu = plant_tf(p, 0.0).eval(w0);
    const Complex g = plant_tf(p, 1.0).eval(w0);
    CHECK(std::abs(g) == doctest::Approx(std::abs(gyu)).epsilon(1e-12));
    const double dphi = std::arg(g / gyu);
    const double expect = std::remainder(-w0 * p.tau_n, 2.0 * std::acos(-1.0));
    CHECK(dphi == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("freq_response rejects bad grids") {
    const RationalTF g = RationalTF::constant(1.0);
    CHECK_THROWS_AS(freq_response(g, {0.0, 1.0}), Error);
    CHECK_THROWS_AS(freq_response(g, {2.0, 1.0}), Error);
}

TEST_CASE("series response equals pointwise product (property)") {
    std::mt19937 rng(7);
    const auto grid = log_grid_n(1e-2, 1e2, 60);
    for (int trial = 0; trial < 12; ++trial) {
        const RationalTF g1 = test::random_stable_tf(rng, 5);
        const RationalTF g2 = test::random_stable_tf(rng, 5);
        const RationalTF prod = series(g1, g2);
        for (double w : grid) {
            const Complex lhs = prod.eval(w);
            const Complex rhs = g1.eval(w) * g2.eval(w);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("csv export schema") {
    const RationalTF g{Polynomial{1.0}, Polynomial{1.0, 1.0}};
    std::ostringstream os;
    freq_response(g, log_grid_n(0.1, 10.0, 5)).write_csv(os);
    CHECK(os.str().rfind("omega_rad_s,re,im,mag_db,phase_deg\n", 0) == 0);
}

TEST_CASE("margins of the pure integrator") {
    const RationalTF l{Polynomial{1.0}, Polynomial{0.0, 1.0}};
    const MarginReport rep = stability_margins(l);
    REQUIRE(rep.has_gain_crossover);
    CHECK(rep.omega_c == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.phase_margin_deg == doctest::Approx(90.0).epsilon(1e-9));
    CHECK(!rep.has_phase_crossover);
    CHECK(std::isinf(rep.gain_margin));
}

TEST_CASE("margin crossover satisfies |L| = 1") {
    const PlantParams p = PlantParams::nominal();
    const RationalTF l_fo = canonical_cfo() * plant_tf(p, 1.0);
    const MarginReport rep = stability_margins(l_fo);
    REQUIRE(rep.has_gain_crossover);
    CHECK(std::abs(l_fo.eval(rep.omega_c)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("published margins of both loops (exact delay)") {
    const PlantParams p = PlantParams::nominal();
    const RationalTF g = plant_tf(p, 1.0);
    const ControllerSet set = make_controller_set();

    const MarginReport fo = stability_margins(set.c_fo * g);
    CHECK(fo.omega_c == doctest::Approx(1.49).epsilon(0.01));
    CHECK(fo.phase_margin_deg == doctest::Approx(37.36).epsilon(0.02));

    const MarginReport hinf = stability_margins(-1.0 * set.c_inf_2 * g);
    CHECK(hinf.omega_c == doctest::Approx(1.44).epsilon(0.01));
    CHECK(hinf.phase_margin_deg == doctest::Approx(32.09).epsilon(0.02));
    CHECK(hinf.gain_margin == doctest::Approx(2.18).epsilon(0.02));
}

TEST_CASE("no crossover in band comes back flagged") {
    const RationalTF g = RationalTF::constant(0.5);
    const MarginReport rep = stability_margins(g);
    CHECK(!rep.has_gain_crossover);
    CHECK(std::isinf(rep.gain_margin));
    CHECK(std::isinf(rep.phase_margin_deg));
}
