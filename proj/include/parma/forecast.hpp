#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "parma/model.hpp"

namespace parma {

/// Information available at the forecast origin tau.
///
/// observed holds y_tau, ..., y_{tau-p+1}; innovations holds the known
/// eps_tau, ..., eps_{tau-q+1}. Both newest first.
struct ForecastOrigin {
    Time time = 0;
    std::vector<double> observed;
    std::vector<double> innovations;
};

class MissingInnovationTail : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One row of a forecast report.
struct HorizonForecast {
    int horizon = 0;
    Time target_time = 0;
    int target_season = 0;
    double point = 0.0;
    /// xi_{t,r} (or xi*_{t,r}), r = 0..h-1, anchored at the target time.
    std::vector<double> fe_coeffs;
    double mse = 0.0;
    /// sum_r xi'_{t,r} eps_{t-r}; zero for pure AR models.
    double known_innovation_term = 0.0;
};

struct ForecastReport {
    Time origin = 0;
    std::vector<HorizonForecast> rows;
};

/// Gaussian-innovation interval point -/+ z sqrt(mse).
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

Interval gaussian_interval(const HorizonForecast& row, double z);

/// Optimal linear predictors for horizons 1..H from `origin`.
/// Throws MissingInnovationTail when q >= 1 and the innovation tail is short.
ForecastReport predict(const PeriodicModel& model, const ForecastOrigin& origin, int max_horizon);

/// Forecast-error weights for target time t at horizon h: xi_{t,0..h-1} for
/// pure AR, xi*_{t,0..h-1} when q >= 1.
std::vector<double> forecast_error_coeffs(const PeriodicModel& model, Time target, int horizon);

/// mse[h-1] = sum_{r<h} c_{t,r}^2 sigma2(t-r), t = origin + h.
std::vector<double> mse_profile(const PeriodicModel& model, Time origin, int max_horizon);

} // namespace parma
