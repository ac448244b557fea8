#include "parma/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace parma {

namespace {

// det of the submatrix formed by the rows in `rows` (bitmask) and the last
// popcount(rows) columns. Expanding along its first column removes one row
// and the leading column, so every reachable submatrix has that form.
double laplace_rec(const Eigen::MatrixXd& a, std::uint32_t rows, std::vector<double>& memo,
                   std::vector<char>& known) {
    if (known[rows]) return memo[rows];
    const int k = static_cast<int>(a.rows());
    const int size = __builtin_popcount(rows);
    double det = 0.0;
    if (size == 0) {
        det = 1.0;
    } else {
        const int col = k - size;
        int position = 0;
        for (int i = 0; i < k; ++i) {
            if (!(rows & (1u << i))) continue;
            const double entry = a(i, col);
            if (entry != 0.0) {
                const double minor = laplace_rec(a, rows & ~(1u << i), memo, known);
                det += (position % 2 == 0 ? entry : -entry) * minor;
            }
            ++position;
        }
    }
    known[rows] = 1;
    memo[rows] = det;
    return det;
}

} // namespace

double DeterminantOracle::laplace(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() > kMaxLaplaceOrder) throw std::invalid_argument("Laplace oracle limited to order 14");
    const int k = static_cast<int>(a.rows());
    const std::size_t states = std::size_t{1} << k;
    std::vector<double> memo(states, 0.0);
    std::vector<char> known(states, 0);
    return laplace_rec(a, static_cast<std::uint32_t>(states - 1), memo, known);
}

double DeterminantOracle::lu(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() > kMaxLuOrder) throw std::invalid_argument("LU oracle limited to order 512");
    if (a.rows() == 0) return 1.0;
    return a.partialPivLu().determinant();
}

double DeterminantOracle::band_lu(Eigen::MatrixXd a, int lower, int upper) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (lower < 0 || upper < 0) throw std::invalid_argument("band widths must be >= 0");
    const Eigen::Index k = a.rows();
    double det = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::Index last_row = std::min<Eigen::Index>(k - 1, j + lower);
        // row swaps widen the upper band to lower + upper
        const Eigen::Index last_col = std::min<Eigen::Index>(k - 1, j + lower + upper);
        Eigen::Index piv = j;
        for (Eigen::Index i = j + 1; i <= last_row; ++i) {
            if (std::abs(a(i, j)) > std::abs(a(piv, j))) piv = i;
        }
        if (a(piv, j) == 0.0) return 0.0;
        if (piv != j) {
            for (Eigen::Index c = j; c <= last_col; ++c) std::swap(a(j, c), a(piv, c));
            det = -det;
        }
        const double d = a(j, j);
        det *= d;
        for (Eigen::Index i = j + 1; i <= last_row; ++i) {
            const double f = a(i, j) / d;
            if (f == 0.0) continue;
            for (Eigen::Index c = j + 1; c <= last_col; ++c) a(i, c) -= f * a(j, c);
        }
    }
    return det;
}

} // namespace parma
