#pragma once

// Shared helpers for the unit and acceptance tests: random models and small
// independent reference computations.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "parma/model.hpp"

namespace parma::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))]; }

private:
    std::mt19937_64 engine_;
};

struct RandomModelOptions {
    int l = 4;
    int p = 1;
    int q = 0;
    double coef = 1.0;   ///< AR/MA coefficients uniform in [-coef, coef]
    double drift = 1.0;  ///< drift uniform in [-drift, drift]
    double sigma_lo = 0.5;
    double sigma_hi = 2.0;
};

inline ModelSpec random_spec(Rng& rng, const RandomModelOptions& o) {
    ModelSpec spec;
    spec.l = o.l;
    spec.p = o.p;
    spec.q = o.q;
    for (int s = 0; s < o.l; ++s) {
        spec.drift.push_back(rng.uniform(-o.drift, o.drift));
        spec.sigma2.push_back(rng.uniform(o.sigma_lo, o.sigma_hi));
    }
    for (int m = 0; m < o.p; ++m) {
        std::vector<double> row;
        for (int s = 0; s < o.l; ++s) row.push_back(rng.uniform(-o.coef, o.coef));
        spec.ar.push_back(row);
    }
    for (int j = 0; j < o.q; ++j) {
        std::vector<double> row;
        for (int s = 0; s < o.l; ++s) row.push_back(rng.uniform(-o.coef, o.coef));
        spec.ma.push_back(row);
    }
    return spec;
}

inline PeriodicModel random_model(Rng& rng, const RandomModelOptions& o) {
    return PeriodicModel(random_spec(rng, o));
}

inline ModelSpec par_spec(int l, std::vector<std::vector<double>> ar, std::vector<std::vector<double>> ma = {},
                          std::vector<double> drift = {}, std::vector<double> sigma2 = {}) {
    ModelSpec spec;
    spec.l = l;
    spec.p = static_cast<int>(ar.size());
    spec.q = static_cast<int>(ma.size());
    spec.ar = std::move(ar);
    spec.ma = std::move(ma);
    spec.drift = drift.empty() ? std::vector<double>(l, 0.0) : std::move(drift);
    spec.sigma2 = sigma2.empty() ? std::vector<double>(l, 1.0) : std::move(sigma2);
    return spec;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// psi weights of a constant ARMA model by power-series division
/// (1 + theta_1 z + ...) / (1 - phi_1 z - ...).
inline std::vector<double> psi_weights(const std::vector<double>& ar, const std::vector<double>& ma, int n) {
    std::vector<double> psi(static_cast<std::size_t>(n) + 1, 0.0);
    for (int r = 0; r <= n; ++r) {
        double v = r == 0 ? 1.0 : (r <= static_cast<int>(ma.size()) ? ma[r - 1] : 0.0);
        for (int i = 1; i <= std::min<int>(r, static_cast<int>(ar.size())); ++i) v += ar[i - 1] * psi[r - i];
        psi[r] = v;
    }
    return psi;
}

/// Spectral radius of the companion matrix of a constant AR polynomial.
inline double ar_radius(const std::vector<double>& ar) {
    const int p = static_cast<int>(ar.size());
    if (p == 0) return 0.0;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) c(0, i) = ar[i];
    for (int i = 1; i < p; ++i) c(i, i - 1) = 1.0;
    return c.eigenvalues().cwiseAbs().maxCoeff();
}

/// Mean of a (possibly autocorrelated) sequence with a batch-means standard error.
struct BatchEstimate {
    double mean = 0.0;
    double se = 0.0;
};

inline BatchEstimate batch_means(const std::vector<double>& x, int batches = 100) {
    const std::size_t n = x.size() / static_cast<std::size_t>(batches);
    std::vector<double> means;
    double total = 0.0;
    for (int b = 0; b < batches; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += x[static_cast<std::size_t>(b) * n + i];
        means.push_back(acc / static_cast<double>(n));
        total += means.back();
    }
    const double mean = total / batches;
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    return {mean, std::sqrt(ss / (batches - 1) / batches)};
}

} // namespace parma::testing
