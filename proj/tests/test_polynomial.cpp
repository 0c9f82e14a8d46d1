#include <doctest.h>

#include <cmath>

#include "tmoctl/errors.hpp"
#include "tmoctl/polynomial.hpp"

using namespace tmoctl;

TEST_CASE("polynomial construction trims trailing zeros") {
    Polynomial p{1.0, 2.0, 0.0, 0.0};
    CHECK(p.degree() == 1);
    CHECK(Polynomial{}.is_zero());
    CHECK(Polynomial{0.0}.is_zero());
    CHECK(Polynomial{0.0}.degree() == 0);
}

TEST_CASE("polynomial arithmetic and evaluation") {
    const Polynomial a{1.0, 1.0};        // 1 + s
    const Polynomial b{2.0, 0.0, 1.0};   // 2 + s^2
    const Polynomial prod = a * b;       // 2 + 2s + s^2 + s^3
    CHECK(prod.coeff(0) == doctest::Approx(2.0));
    CHECK(prod.coeff(1) == doctest::Approx(2.0));
    CHECK(prod.coeff(2) == doctest::Approx(1.0));
    CHECK(prod.coeff(3) == doctest::Approx(1.0));

    const Complex v = prod.eval(Complex(0.0, 1.0));
    const Complex expect = a.eval(Complex(0.0, 1.0)) * b.eval(Complex(0.0, 1.0));
    CHECK(std::abs(v - expect) < 1e-14);

    const Polynomial d = prod.derivative();
    CHECK(d.coeff(0) == doctest::Approx(2.0));
    CHECK(d.coeff(2) == doctest::Approx(3.0));
}

TEST_CASE("polynomial division") {
    // (s+2)/(s+1): quotient 1, remainder 1
    const Polynomial num{2.0, 1.0};
    const Polynomial den{1.0, 1.0};
    const auto [q, r] = num.divmod(den);
    CHECK(q.degree() == 0);
    CHECK(q.coeff(0) == doctest::Approx(1.0));
    CHECK(r.coeff(0) == doctest::Approx(1.0));
}

TEST_CASE("roots: plant resonance pair") {
    // s^2 + 1.027 s + 267.4 -> -0.514 +/- j 16.346
    const Polynomial p{267.4, 1.027, 1.0};
    const auto roots = p.roots();
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() == doctest::Approx(-0.5135).epsilon(1e-3));
    CHECK(std::abs(roots[0].imag()) == doctest::Approx(16.346).epsilon(1e-3));
}

TEST_CASE("roots: triple root with multiplicity") {
    std::vector<Complex> rs{{-1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}};
    const Polynomial p = Polynomial::from_roots(rs);  // (s+1)^3
    const auto roots = p.roots();
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots) CHECK(std::abs(r - Complex(-1.0, 0.0)) < 2e-5);
}

TEST_CASE("roots: zero polynomial throws, origin roots exact") {
    CHECK_THROWS_AS(Polynomial{}.roots(), ZeroPolynomialError);
    const Polynomial p{0.0, 0.0, 3.0, 1.0};  // s^2 (3 + s)
    const auto roots = p.roots();
    int at_origin = 0;
    for (const auto& r : roots)
        if (std::abs(r) == 0.0) ++at_origin;
    CHECK(at_origin == 2);
}

TEST_CASE("roots survive wide coefficient spans") {
    // 0.14583 (s + 1e4): root at -1e4 with gain far from 1.
    const Polynomial p{0.14583e4, 0.14583e0};
    const auto roots = p.roots();
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].real() == doctest::Approx(-1e4).epsilon(1e-12));
}
