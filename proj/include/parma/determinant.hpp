#pragma once

#include <Eigen/Dense>

namespace parma {

/// Reference determinant evaluators used to check the Green-function
/// recurrence. Neither is used on a production path.
class DeterminantOracle {
public:
    static constexpr int kMaxLaplaceOrder = 14;
    static constexpr int kMaxLuOrder = 512;

    /// Cofactor expansion along the first column, applied recursively.
    /// Sub-determinants are memoized by the set of surviving rows, so the
    /// cost is O(k * 2^k) instead of O(k!). Order must be <= 14.
    static double laplace(const Eigen::MatrixXd& a);

    /// LU factorization with partial pivoting. Order must be <= 512.
    static double lu(const Eigen::MatrixXd& a);
    /// LU with partial pivoting restricted to a band of `lower` subdiagonals
    /// and `upper` superdiagonals; entries outside the band must be zero.
    /// Cost O(k * lower * (lower + upper)); no order limit.
    static double band_lu(Eigen::MatrixXd a, int lower, int upper);
};

} // namespace parma
