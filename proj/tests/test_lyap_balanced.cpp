#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tmoctl/balanced_truncation.hpp"
#include "tmoctl/controllers.hpp"
#include "tmoctl/errors.hpp"
#include "tmoctl/frequency.hpp"
#include "tmoctl/hinf_norm.hpp"
#include "tmoctl/lyapunov.hpp"
#include "tmoctl/plant.hpp"
#include "test_util.hpp"

using namespace tmoctl;

TEST_CASE("lyapunov scalar and diagonal cases") {
    Eigen::MatrixXd A(1, 1), Q(1, 1);
    A << -1.0;
    Q << 2.0;
    CHECK(lyap_solve(A, Q)(0, 0) == doctest::Approx(1.0));

    Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(2, 2);
    A2(0, 0) = -1.0;
    A2(1, 1) = -2.0;
    const Eigen::MatrixXd P = lyap_solve(A2, Eigen::MatrixXd::Identity(2, 2));
    CHECK(P(0, 0) == doctest::Approx(0.5));
    CHECK(P(1, 1) == doctest::Approx(0.25));
    CHECK(P(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("lyapunov rejects non-Hurwitz A") {
    Eigen::MatrixXd A(1, 1), Q(1, 1);
    A << 0.5;
    Q << 1.0;
    CHECK_THROWS_AS(lyap_solve(A, Q), NonHurwitzError);
}

TEST_CASE("lyapunov residual on the stable plant part") {
    // The plant without its integrator factor: rebuild the denominator from
    // the nonzero roots (the recovered constant coefficient carries O(1e-12)
    // relative noise, so polynomial division would leave a tiny remainder).
    const PlantParams p = PlantParams::nominal();
    const RationalTF gyu = plant_tf(p, 0.0);
    std::vector<Complex> stable;
    for (const Complex& pole : gyu.den().roots())
        if (std::abs(pole) > 1e-6) stable.push_back(pole);
    REQUIRE(stable.size() == 3);
    const Polynomial den_red = Polynomial::from_roots(stable, gyu.den().leading());
    const StateSpaceModel m = tf_to_ss(RationalTF{gyu.num(), den_red});
    const Eigen::MatrixXd Q = m.B * m.B.transpose();
    const Eigen::MatrixXd P = lyap_solve(m.A, Q);
    const double resid = (m.A * P + P * m.A.transpose() + Q).norm();
    CHECK(resid <= 1e-8 * (m.A.norm() * P.norm() + Q.norm()));
}

TEST_CASE("gramian symmetry and PSD (property)") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const StateSpaceModel sys = test::random_stable_ss(rng, 8);
        const GramianPair g = gramians(sys);
        CHECK((g.controllability - g.controllability.transpose()).norm() <=
              1e-10 * std::max(1.0, g.controllability.norm()));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.controllability);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);
    }
}

TEST_CASE("no-op truncation preserves the response") {
    std::mt19937 rng(9);
    const StateSpaceModel sys = test::random_stable_ss(rng, 6);
    const BalancedTruncation bt = balanced_truncate(sys, sys.order());
    for (double w : log_grid_n(1e-2, 1e2, 40)) {
        const Complex a = sys.eval(w)(0, 0);
        const Complex b = bt.model.eval(w)(0, 0);
        CHECK(std::abs(a - b) <= 1e-7 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("balanced model has equal diagonal Gramians") {
    std::mt19937 rng(13);
    const StateSpaceModel sys = test::random_stable_ss(rng, 7);
    const BalancedTruncation bt = balanced_truncate(sys, sys.order());
    const GramianPair g = gramians(bt.model);
    for (int i = 0; i < bt.model.order(); ++i) {
        const double sigma = bt.spectrum.singular_values[static_cast<size_t>(i)];
        CHECK(g.controllability(i, i) == doctest::Approx(sigma).epsilon(1e-6));
        CHECK(g.observability(i, i) == doctest::Approx(sigma).epsilon(1e-6));
    }
}

TEST_CASE("two-state example: discarding sigma = 1e-6 costs at most 2e-6") {
    // Diagonal balanced system with sigma = {1, 1e-6}.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2), B(2, 1), C(1, 2), D(1, 1);
    A(0, 0) = -0.5;
    A(1, 1) = -2.0;
    B << 1.0, std::sqrt(4e-6);
    C << 1.0, std::sqrt(4e-6);
    D << 0.0;
    const StateSpaceModel sys{A, B, C, D};
    const BalancedTruncation bt = balanced_truncate(sys, 1);
    const double err = hinf_norm(ss_difference(sys, bt.model));
    CHECK(err <= bt.error_bound * (1.0 + 1e-6));
    CHECK(bt.error_bound == doctest::Approx(2e-6).epsilon(1e-3));
}

TEST_CASE("truncation error bound holds on random systems (property)") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const StateSpaceModel sys = test::random_stable_ss(rng, 8);
        for (int r = 1; r < sys.order(); ++r) {
            const BalancedTruncation bt = balanced_truncate(sys, r);
            const double err = hinf_norm(ss_difference(sys, bt.model));
            // Absolute floor: Gramian roundoff scaled by sigma_1.
            CHECK(err <= bt.error_bound * (1.0 + 1e-6) +
                             1e-7 * bt.spectrum.singular_values[0]);
        }
    }
}

TEST_CASE("DC gain moves by at most the bound at omega = 0") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        const StateSpaceModel sys = test::random_stable_ss(rng, 8);
        const int r = std::max(1, sys.order() - 2);
        const BalancedTruncation bt = balanced_truncate(sys, r);
        const double dc0 = std::abs(sys.eval(1e-9)(0, 0));
        const double dc1 = std::abs(bt.model.eval(1e-9)(0, 0));
        CHECK(std::abs(dc0 - dc1) <= bt.error_bound * (1.0 + 1e-6) + 1e-12);
    }
}

TEST_CASE("regularized stand-in of the pre-reduction controller truncates to order 7") {
    // The published controller is already reduced; a stand-in for the
    // pre-reduction one: output channel with its integrator shifted to
    // -eps = -1.5e-3, padded with two fast unreduced modes to order 9.
    const ControllerSet set = canonical_hinf_controller();
    const RationalTF shifted = shift_origin_poles(set.c_inf_2, 1.5e-3);
    const RationalTF padding{Polynomial{1.0e3 * 1.3e3, 1.0e3 + 1.3e3 + 40.0, 1.0},
                             Polynomial{1.0e3 * 1.3e3, 1.0e3 + 1.3e3, 1.0}};
    const RationalTF standin = (shifted * padding).with_delay(0.0);
    REQUIRE(standin.order() >= 9);
    const StateSpaceModel sys = balance_realization(tf_to_ss(standin));
    const BalancedTruncation bt = balanced_truncate(sys, 7);
    CHECK(bt.model.order() == 7);
    const double err = hinf_norm(ss_difference(sys, bt.model));
    CHECK(err <= bt.error_bound * (1.0 + 1e-6) + 1e-7 * bt.spectrum.singular_values[0]);
    // The epsilon pole survives the truncation (it is the dominant state).
    bool has_slow = false;
    for (const Complex& ev : bt.model.eigenvalues())
        if (std::abs(ev + Complex(1.5e-3, 0.0)) < 1e-4) has_slow = true;
    CHECK(has_slow);
}

TEST_CASE("hankel spectrum JSON export") {
    std::vector<Complex> poles{{-1.0, 0.0}, {-2.0, 0.0}, {-3.0, 0.0}, {-4.0, 0.0}};
    const StateSpaceModel sys = tf_to_ss(RationalTF::from_zpk(1.0, {}, poles));
    const BalancedTruncation bt = balanced_truncate(sys, 2);
    const std::string j = bt.spectrum.to_json();
    CHECK(j.front() == '[');
    CHECK(j.back() == ']');
    CHECK(std::count(j.begin(), j.end(), ',') == 3);  // four singular values
}

TEST_CASE("instability is rejected; shifting integrators fixes it") {
    const RationalTF g{Polynomial{1.0}, Polynomial{0.0, 1.0} * Polynomial{1.0, 1.0}};
    CHECK_THROWS_AS(balanced_truncate(tf_to_ss(g), 1), UnstableSystemError);
    const RationalTF shifted = shift_origin_poles(g, 1.5e-3);
    CHECK_NOTHROW(balanced_truncate(tf_to_ss(shifted), 1));
    // The shifted pole sits at -eps, the rest stay put.
    const auto pz = poles_zeros(shifted);
    bool found_eps = false;
    for (const auto& p : pz.poles)
        if (std::abs(p - Complex(-1.5e-3, 0.0)) < 1e-12) found_eps = true;
    CHECK(found_eps);
}
