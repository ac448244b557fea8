#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parma/determinant.hpp"
#include "support.hpp"

using parma::DeterminantOracle;

TEST_CASE("small determinants by hand") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 3, 4;
    CHECK(DeterminantOracle::laplace(a) == doctest::Approx(-2.0));
    CHECK(DeterminantOracle::lu(a) == doctest::Approx(-2.0));
    Eigen::MatrixXd b(3, 3);
    b << 2, 0, 1, 1, 3, 2, 1, 1, 1;
    // 2(3-2) - 0 + 1(1-3) = 0
    CHECK(DeterminantOracle::laplace(b) == doctest::Approx(0.0));
    CHECK(DeterminantOracle::laplace(Eigen::MatrixXd::Identity(14, 14)) == 1.0);
    CHECK(DeterminantOracle::lu(Eigen::MatrixXd(0, 0)) == 1.0);
}

TEST_CASE("Laplace and LU agree on random matrices") {
    parma::testing::Rng rng(5);
    for (int k = 1; k <= 10; ++k) {
        Eigen::MatrixXd a(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) a(i, j) = rng.uniform(-1, 1);
        const double d1 = DeterminantOracle::laplace(a);
        const double d2 = DeterminantOracle::lu(a);
        const double d3 = a.determinant();
        CHECK(parma::testing::close_rel(d1, d2, 1e-11));
        CHECK(parma::testing::close_rel(d1, d3, 1e-11));
    }
}

TEST_CASE("oracle size limits") {
    CHECK_THROWS_AS(DeterminantOracle::laplace(Eigen::MatrixXd::Identity(15, 15)), std::invalid_argument);
    CHECK_THROWS_AS(DeterminantOracle::lu(Eigen::MatrixXd::Identity(513, 513)), std::invalid_argument);
    CHECK_THROWS_AS(DeterminantOracle::lu(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("band LU matches dense LU on band matrices") {
    parma::testing::Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = rng.integer(1, 60);
        const int lower = rng.integer(0, 5), upper = rng.integer(0, 3);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = std::max(0, i - lower); j <= std::min(k - 1, i + upper); ++j) a(i, j) = rng.uniform(-1, 1);
        CHECK(parma::testing::close_rel(DeterminantOracle::band_lu(a, lower, upper), DeterminantOracle::lu(a), 1e-10));
    }
    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(3, 3);
    singular(0, 1) = 1.0;
    CHECK(DeterminantOracle::band_lu(singular, 1, 1) == 0.0);
}
