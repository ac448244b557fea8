#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "parma/model.hpp"
#include "support.hpp"

using namespace parma;
using parma::testing::par_spec;

TEST_CASE("season clock decomposition") {
    const SeasonClock c(4);
    CHECK(c.decompose(7) == ClockPosition{1, 3});
    CHECK(c.decompose(4) == ClockPosition{0, 4});
    CHECK(c.decompose(-1) == ClockPosition{-1, 3});
    CHECK(c.decompose(0) == ClockPosition{-1, 4});
    CHECK(c.decompose(1) == ClockPosition{0, 1});
    CHECK(c.slot(4) == 3);
    CHECK(c.slot(5) == 0);
    CHECK(c.first_time_of(3) == 3);
    CHECK_THROWS_AS(c.first_time_of(5), std::out_of_range);
    CHECK_THROWS_AS(SeasonClock(0), std::invalid_argument);
}

TEST_CASE("compose inverts decompose") {
    for (int l : {1, 2, 3, 7, 12, 365}) {
        const SeasonClock c(l);
        for (Time t = -3 * l - 2; t <= 3 * l + 2; ++t) {
            const auto pos = c.decompose(t);
            CHECK(pos.season >= 1);
            CHECK(pos.season <= l);
            CHECK(c.compose(pos) == t);
        }
    }
}

TEST_CASE("validate accepts a PAR(1;4)") {
    const auto r = validate(par_spec(4, {{0.9, 0.9, 0.9, 0.9}}));
    CHECK(r.ok());
    REQUIRE(r.model.has_value());
    CHECK(r.model->ar_order() == 1);
}

TEST_CASE("validate reports a zero variance") {
    auto spec = par_spec(4, {{0.1, 0.2, 0.3, 0.4}});
    spec.sigma2[2] = 0.0;
    const auto r = validate(spec);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.model.has_value());
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].kind == IssueKind::NonPositiveVariance);
    CHECK(r.issues[0].field == "sigma2[2]");
}

TEST_CASE("validate reports a short coefficient row") {
    const auto r = validate(par_spec(4, {{0.1, 0.2, 0.3}}));
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues[0].kind == IssueKind::ShapeMismatch);
    CHECK(r.issues[0].field == "ar[0]");
}

TEST_CASE("validate collects every issue") {
    auto spec = par_spec(2, {{0.1, std::numeric_limits<double>::quiet_NaN()}}, {{0.5}});
    spec.sigma2 = {1.0, -2.0};
    const auto issues = lint(spec);
    CHECK(issues.size() == 3);
    CHECK_THROWS_AS(PeriodicModel{spec}, ModelValidationError);
    try {
        PeriodicModel m{spec};
    } catch (const ModelValidationError& e) {
        CHECK(e.issues().size() == 3);
    }
}

TEST_CASE("validate rejects inconsistent orders") {
    auto spec = par_spec(3, {{0.1, 0.2, 0.3}});
    spec.p = 2;
    CHECK_FALSE(validate(spec).ok());
    spec = par_spec(3, {});
    spec.l = 0;
    CHECK_FALSE(validate(spec).ok());
}

TEST_CASE("is_constant") {
    CHECK(is_constant(PeriodicModel(par_spec(3, {{0.4, 0.4, 0.4}, {-0.2, -0.2, -0.2}}))));
    CHECK_FALSE(is_constant(PeriodicModel(par_spec(4, {{0.1, 0.2, 0.1, 0.1}}))));
    CHECK(is_constant(PeriodicModel(par_spec(1, {{0.7}}))));
    CHECK(PeriodicModel::constant({0.5, 0.1}, {0.3}).is_constant());
}

TEST_CASE("coefficients repeat every period") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int l = rng.integer(1, 12);
        const auto m = testing::random_model(rng, {l, rng.integer(0, 4), rng.integer(0, 3)});
        for (Time t = -2 * l; t <= 2 * l; ++t) {
            for (int k = 1; k <= m.ar_order(); ++k) CHECK(m.phi(k, t) == m.phi(k, t + l));
            for (int j = 1; j <= m.ma_order(); ++j) CHECK(m.theta(j, t) == m.theta(j, t + l));
            CHECK(m.drift(t) == m.drift(t + l));
            CHECK(m.sigma2(t) == m.sigma2(t + l));
        }
    }
}

TEST_CASE("time-indexed access goes through the clock") {
    const PeriodicModel m(par_spec(4, {{1, 2, 3, 4}}, {}, {10, 20, 30, 40}));
    CHECK(m.phi(1, 4) == 4);
    CHECK(m.phi(1, 5) == 1);
    CHECK(m.phi(1, 0) == 4);
    CHECK(m.phi(1, -2) == 2);
    CHECK(m.drift(7) == 30);
    CHECK(m.phi_at_season(1, 3) == 3);
    CHECK_THROWS_AS(m.phi(2, 1), std::out_of_range);
    CHECK_THROWS_AS(m.phi(0, 1), std::out_of_range);
    CHECK_THROWS_AS(m.theta(1, 1), std::out_of_range);
}
