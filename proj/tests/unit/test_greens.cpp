#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parma/determinant.hpp"
#include "parma/greens.hpp"
#include "parma/solution.hpp"
#include "support.hpp"

using namespace parma;
using parma::testing::close_rel;
using parma::testing::par_spec;

TEST_CASE("fundamental matrix shapes") {
    const PeriodicModel par14(par_spec(4, {{0.1, 0.2, 0.3, 0.4}}));
    const auto one = build_fundamental(par14, 4, 1);
    CHECK(one.entries.rows() == 1);
    CHECK(one.entries(0, 0) == 0.4);

    const PeriodicModel p2(par_spec(3, {{1, 2, 3}, {10, 20, 30}}));
    const Time t = 6;  // season 3
    const auto tri = build_fundamental(p2, t, 3).entries;
    for (int i = 0; i < 3; ++i) {
        CHECK(tri(i, i) == p2.phi(1, t - 3 + i + 1));
        if (i + 1 < 3) CHECK(tri(i, i + 1) == -1.0);
        if (i >= 1) CHECK(tri(i, i - 1) == p2.phi(2, t - 3 + i + 1));
    }
    CHECK(tri(2, 0) == 0.0);
    CHECK(tri(0, 2) == 0.0);

    const PeriodicModel p3(par_spec(2, {{1, 2}, {3, 4}, {5, 6}}));
    const auto two = build_fundamental(p3, 2, 2).entries;
    CHECK(two(0, 0) == p3.phi(1, 1));
    CHECK(two(0, 1) == -1.0);
    CHECK(two(1, 0) == p3.phi(2, 2));
    CHECK(two(1, 1) == p3.phi(1, 2));
    CHECK_THROWS_AS(build_fundamental(p3, 2, 0), std::invalid_argument);
}

TEST_CASE("constant AR(1) Green weights") {
    const auto m = PeriodicModel::constant({0.5});
    const auto g = xi_recurrence(m, 10, 3);
    CHECK(g.values() == std::vector<double>{1, 0.5, 0.25, 0.125});
    CHECK(g.xi(-1) == 0.0);
    CHECK_THROWS_AS(g.xi(4), std::out_of_range);
}

TEST_CASE("PAR(1;4) period product") {
    const double a = 0.7, b = -1.3, c = 0.45, d = 1.1;
    const PeriodicModel m(par_spec(4, {{a, b, c, d}}));
    const auto g = xi_recurrence(m, 8, 4);
    CHECK(g.anchor_season() == 4);
    CHECK(g.xi(4) == doctest::Approx(a * b * c * d).epsilon(1e-15));
}

TEST_CASE("random PAR(3;5) against Laplace") {
    testing::Rng rng(3);
    const auto m = testing::random_model(rng, {5, 3, 0});
    for (Time t : {-3, 0, 7, 13}) {
        const auto g = xi_recurrence(m, t, 12);
        for (int k = 1; k <= 12; ++k) {
            const double det = DeterminantOracle::laplace(build_fundamental(m, t, k).entries);
            CHECK(close_rel(g.xi(k), det, 1e-10));
        }
    }
}

TEST_CASE("oracle equivalence over random models") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = testing::random_model(rng, {rng.integer(1, 6), rng.integer(0, 4), 0});
        const Time t = rng.integer(-20, 20);
        const auto g = xi_recurrence(m, t, 12);
        for (int k = 1; k <= 12; ++k) {
            CHECK(close_rel(g.xi(k), DeterminantOracle::laplace(build_fundamental(m, t, k).entries), 1e-10));
        }
    }
}

TEST_CASE("principal minors are earlier Green weights") {
    testing::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testing::random_model(rng, {rng.integer(2, 6), rng.integer(1, 4), 0});
        const Time t = rng.integer(1, 30);
        const int k = 10;
        const auto full = build_fundamental(m, t, k).entries;
        const auto g = xi_recurrence(m, t, k);
        for (int r = 0; r < k; ++r) {
            const Eigen::MatrixXd minor = full.bottomRightCorner(k - r, k - r);
            CHECK(close_rel(DeterminantOracle::laplace(minor), g.xi(k - r), 1e-11));
        }
    }
}

TEST_CASE("tables repeat every period") {
    testing::Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const int l = rng.integer(1, 12);
        const auto m = testing::random_model(rng, {l, rng.integer(0, 4), 0});
        const Time t = rng.integer(-50, 50);
        CHECK(xi_recurrence(m, t, 60) == xi_recurrence(m, t + l, 60));
        CHECK(xi_recurrence(m, t, 60) == xi_recurrence(m, t - 3 * l, 60));
    }
}

TEST_CASE("constant models reduce to psi weights") {
    testing::Rng rng(31);
    int tested = 0;
    while (tested < 20) {
        std::vector<double> ar(static_cast<std::size_t>(rng.integer(1, 3)));
        std::vector<double> ma(static_cast<std::size_t>(rng.integer(0, 2)));
        for (auto& v : ar) v = rng.uniform(-0.9, 0.9);
        for (auto& v : ma) v = rng.uniform(-0.9, 0.9);
        if (testing::ar_radius(ar) > 0.9) continue;
        ++tested;
        const auto m = PeriodicModel::constant(ar, ma);
        const auto g = xi_recurrence(m, 0, 50);
        const auto pure = testing::psi_weights(ar, {}, 50);
        const auto mixed = testing::psi_weights(ar, ma, 50);
        const auto star = xi_star(m, 0, 51);
        for (int r = 0; r <= 50; ++r) {
            CHECK(std::abs(g.xi(r) - pure[r]) <= 1e-12);
            CHECK(std::abs(star[r] - mixed[r]) <= 1e-12);
        }
    }
}

TEST_CASE("degenerate seeds") {
    const PeriodicModel zero(par_spec(3, {}));
    const auto g = xi_recurrence(zero, 5, 10);
    CHECK(g.xi(0) == 1.0);
    for (int r = 1; r <= 10; ++r) CHECK(g.xi(r) == 0.0);
    CHECK(xi_recurrence(zero, 5, 0).values() == std::vector<double>{1.0});
    CHECK_THROWS_AS(xi_recurrence(zero, 5, -1), std::invalid_argument);
}

TEST_CASE("xi_star examples") {
    testing::Rng rng(37);
    const auto ar_only = testing::random_model(rng, {4, 2, 0});
    const auto g = xi_recurrence(ar_only, 3, 9);
    const auto star = xi_star(ar_only, 3, 10);
    for (int r = 0; r < 10; ++r) CHECK(star[r] == g.xi(r));

    const auto arma = PeriodicModel::constant({0.5}, {0.3});
    const auto s = xi_star(arma, 0, 3);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(0.8));
    CHECK(s[2] == doctest::Approx(0.4));
}

namespace {

// Coefficient of eps at time `at` in y_t, by running the difference equation
// from zero initial values with a single unit innovation.
double impulse_response(const PeriodicModel& m, Time t, Time origin, Time at) {
    SolutionInput in;
    in.origin = origin;
    in.lead = static_cast<int>(t - origin);
    in.initial.assign(static_cast<std::size_t>(m.ar_order()), 0.0);
    in.innovations.assign(static_cast<std::size_t>(in.lead + m.ma_order()), 0.0);
    in.innovations[static_cast<std::size_t>(at - (origin - m.ma_order() + 1))] = 1.0;
    ModelSpec spec = m.spec();
    std::fill(spec.drift.begin(), spec.drift.end(), 0.0);
    return direct_recursion(PeriodicModel(spec), in);
}

} // namespace

TEST_CASE("xi_star against brute-force substitution") {
    testing::Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testing::random_model(rng, {2, 1, 1});
        const Time t = rng.integer(-5, 5);
        const int h = 8;
        const auto star = xi_star(m, t, h);
        for (int r = 0; r < h; ++r) CHECK(close_rel(star[r], impulse_response(m, t, t - h, t - r), 1e-13));
    }
}

TEST_CASE("xi_prime examples") {
    testing::Rng rng(43);
    CHECK(xi_prime(testing::random_model(rng, {3, 2, 0}), 4, 2).empty());

    const auto ma1 = testing::random_model(rng, {3, 1, 1});
    const auto one = xi_prime(ma1, 5, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == ma1.theta(1, 5));

    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testing::random_model(rng, {2, 1, 2});
        const Time t = rng.integer(-5, 5);
        const auto prime = xi_prime(m, t, 2);
        REQUIRE(prime.size() == 2);
        // E(y_t | F_{t-2}) by substituting y_{t-1} into y_t
        CHECK(close_rel(prime[0], m.theta(2, t) + m.phi(1, t) * m.theta(1, t - 1), 1e-14));
        CHECK(close_rel(prime[1], m.phi(1, t) * m.theta(2, t - 1), 1e-14));
        for (int r = 2; r <= 3; ++r) CHECK(close_rel(prime[r - 2], impulse_response(m, t, t - 2, t - r), 1e-13));
    }
    CHECK_THROWS_AS(xi_prime(ma1, 5, 0), std::invalid_argument);
}

TEST_CASE("bank tables match direct computation") {
    testing::Rng rng(47);
    const auto m = testing::random_model(rng, {7, 3, 0});
    const GreenBank serial(m, 40, false);
    const GreenBank parallel(m, 40, true);
    for (int s = 1; s <= 7; ++s) {
        CHECK(serial.for_season(s) == parallel.for_season(s));
        CHECK(serial.for_season(s) == xi_recurrence(m, s, 40));
    }
    CHECK(serial.for_time(-3) == xi_recurrence(m, 4, 40));
    CHECK(serial.horizon() == 40);
    CHECK_THROWS_AS(serial.for_season(8), std::out_of_range);
}

TEST_CASE("explosive tables carry an overflow flag") {
    const auto m = PeriodicModel::constant({3.0});
    CHECK(xi_recurrence(m, 0, 250).overflow_warning());
    CHECK_FALSE(xi_recurrence(m, 0, 20).overflow_warning());
    CHECK(xi_recurrence(m, 0, 250).xi(250) == doctest::Approx(std::pow(3.0, 250)).epsilon(1e-12));
}
