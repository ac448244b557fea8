#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "parma/model.hpp"

namespace parma {

class NotConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical surrogate for square-summability of the Green weights.
///
/// rho_hat is the per-step geometric rate of |xi_{t,r}| in r, maximized over
/// anchor seasons; per_period_growth = rho_hat^l.
struct ConvergenceDiagnostic {
    double rho_hat = 0.0;
    double per_period_growth = 0.0;
    /// max |xi| near lag R relative to max |xi| over all lags, worst season.
    double tail_ratio = 0.0;
    int probe_lag = 0;
    double margin = 0.0;
    bool pass = false;
};

struct ConvergenceOptions {
    /// Probe lag R; 0 selects 400 periods. Must be >= 2l otherwise.
    int probe_lag = 0;
    /// pass needs per_period_growth < 1 - margin.
    double margin = 0.01;
    /// pass needs tail_ratio below this.
    double tail_threshold = 1e-2;
};

ConvergenceDiagnostic check_convergence(const PeriodicModel& model,
                                        const ConvergenceOptions& options = {});

/// A truncated moment value with an estimate of the neglected tail.
struct TruncatedValue {
    double value = 0.0;
    double tail_bound = 0.0;
    int truncation = 0;
};

/// Smallest multiple of l at which the weights have decayed below 1e-14 of
/// their maximum, capped at 10000. Throws NotConvergent when the diagnostic fails.
int default_truncation(const PeriodicModel& model);

/// E(y_t) = sum_{r=0}^R xi_{t,r} phi_0(t-r) for t in `season`.
/// truncation = 0 selects default_truncation(). Throws NotConvergent.
TruncatedValue unconditional_mean(const PeriodicModel& model, int season, int truncation = 0);

/// Var(y_t) = sum_{r=0}^R c_{t,r}^2 sigma2(t-r), c = xi (q = 0) or xi* (q >= 1).
TruncatedValue unconditional_variance(const PeriodicModel& model, int season, int truncation = 0);

/// gamma(s, k) = Cov(y_t, y_{t-k}) = sum_{r=0}^R c_{t,k+r} c_{t-k,r} sigma2(t-k-r).
TruncatedValue autocovariance(const PeriodicModel& model, int season, int lag, int truncation = 0);

/// The same covariance, k >= 1, rebuilt from the general solution:
///   xi_{t,k} Var(y_{t-k}) + sum_{m=1}^{p-1} w_m gamma(t-k, m)
///   + sum_{r=0}^{q-1} xi*_{t-k,r} xi'_{t,r+k} sigma2(t-k-r)
/// with w_m the homogeneous weights and every covariance on the right taken
/// from the series form at the same truncation.
double autocovariance_by_recursion(const PeriodicModel& model, int season, int lag,
                                   int truncation = 0);

struct SeasonMoments {
    int season = 0;
    double mean = 0.0;
    double variance = 0.0;
    std::vector<double> autocovariance;  ///< lags 0..K
};

struct MomentProfile {
    std::vector<SeasonMoments> seasons;
    int truncation = 0;
    double tail_bound = 0.0;
    ConvergenceDiagnostic diagnostic;
};

/// Moments for every season with autocovariances up to max_lag.
MomentProfile moment_profile(const PeriodicModel& model, int max_lag, int truncation = 0,
                             const ConvergenceOptions& options = {});

} // namespace parma
