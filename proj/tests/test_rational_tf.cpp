#include <doctest.h>

#include <cmath>

#include "tmoctl/errors.hpp"
#include "tmoctl/rational_tf.hpp"

using namespace tmoctl;

namespace {
const Polynomial s{0.0, 1.0};
}

TEST_CASE("series adds delays; explicit coprime reduction cancels") {
    const RationalTF g1{Polynomial{1.0}, Polynomial{1.0, 1.0}, 0.1};  // 1/(s+1), delay 0.1
    const RationalTF g2{Polynomial{1.0, 1.0}, Polynomial{1.0}, 0.2};  // (s+1), delay 0.2
    const RationalTF prod = series(g1, g2);
    CHECK(prod.delay() == doctest::Approx(0.3));
    // Not reduced implicitly:
    CHECK(prod.num().degree() == 1);
    const RationalTF red = prod.reduced();
    CHECK(red.num().degree() == 0);
    CHECK(red.den().degree() == 0);
    CHECK(red.num().coeff(0) / red.den().coeff(0) == doctest::Approx(1.0));
}

TEST_CASE("unity feedback of integrator") {
    const RationalTF integ{Polynomial{1.0}, s};
    const RationalTF cl = feedback(integ, RationalTF::constant(1.0));
    CHECK(cl.den().coeff(0) == doctest::Approx(1.0));
    CHECK(cl.den().coeff(1) == doctest::Approx(1.0));
    CHECK(cl.num().coeff(0) == doctest::Approx(1.0));
}

TEST_CASE("feedback with delay in the loop is rejected") {
    const RationalTF g{Polynomial{1.0}, Polynomial{1.0, 1.0}, 0.4};
    CHECK_THROWS_AS(feedback(g, RationalTF::constant(1.0)), AlgebraicLoopError);
    CHECK_THROWS_AS(feedback(RationalTF::constant(1.0), g), AlgebraicLoopError);
}

TEST_CASE("parallel with unequal delays is rejected, equal delays pass") {
    const RationalTF a{Polynomial{1.0}, Polynomial{1.0, 1.0}, 0.1};
    const RationalTF b{Polynomial{1.0}, Polynomial{2.0, 1.0}, 0.2};
    CHECK_THROWS_AS(parallel(a, b), Error);
    const RationalTF c = parallel(a, a.with_delay(0.1));
    CHECK(c.delay() == doctest::Approx(0.1));
}

TEST_CASE("degenerate feedback denominator") {
    // g1 = 1, g2 = -1: 1 + g1 g2 == 0.
    CHECK_THROWS_AS(feedback(RationalTF::constant(1.0), RationalTF::constant(-1.0)),
                    DegenerateDenominatorError);
}

TEST_CASE("poles_zeros with multiplicity") {
    const Polynomial den = Polynomial{1.0, 1.0} * Polynomial{1.0, 1.0} * Polynomial{1.0, 1.0};
    const RationalTF g{Polynomial{1.0}, den};
    const auto pz = poles_zeros(g);
    REQUIRE(pz.poles.size() == 3);
    CHECK(pz.zeros.empty());
    for (const auto& p : pz.poles) CHECK(std::abs(p - Complex(-1.0, 0.0)) < 2e-5);
}

TEST_CASE("eval: delay factor is exactly all-pass") {
    const RationalTF d{Polynomial{1.0}, Polynomial{1.0}, 0.3844};
    for (double w : {1e-3, 0.1, 3.0, 50.0, 1e3}) {
        CHECK(std::abs(std::abs(d.eval(w)) - 1.0) < 1e-15);
    }
}

TEST_CASE("eval at a pole returns infinite-magnitude marker") {
    const RationalTF g{Polynomial{1.0}, Polynomial{1.0, 0.0, 1.0}};  // 1/(s^2+1), pole at j1
    const Complex v = g.eval(1.0);
    CHECK(std::isinf(std::abs(v)));
}
