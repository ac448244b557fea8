#include "parma/forecast.hpp"

#include <cmath>

#include "parma/greens.hpp"
#include "parma/solution.hpp"

namespace parma {

namespace {

std::vector<double> error_weights(const PeriodicModel& model, const GreenTable& table, int h) {
    if (model.ma_order() == 0) {
        const auto& xi = table.values();
        return {xi.begin(), xi.begin() + h};
    }
    return xi_star(model, table, h);
}

double weighted_variance(const PeriodicModel& model, Time target, const std::vector<double>& c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) {
        acc += c[r] * c[r] * model.sigma2(target - static_cast<Time>(r));
    }
    return acc;
}

} // namespace

Interval gaussian_interval(const HorizonForecast& row, double z) {
    const double half = z * std::sqrt(row.mse);
    return {row.point - half, row.point + half};
}

std::vector<double> forecast_error_coeffs(const PeriodicModel& model, Time target, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    return error_weights(model, xi_recurrence(model, target, horizon), horizon);
}

std::vector<double> mse_profile(const PeriodicModel& model, Time origin, int max_horizon) {
    if (max_horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_horizon));
    for (int h = 1; h <= max_horizon; ++h) {
        const Time t = origin + h;
        out.push_back(weighted_variance(model, t, forecast_error_coeffs(model, t, h)));
    }
    return out;
}

ForecastReport predict(const PeriodicModel& model, const ForecastOrigin& origin, int max_horizon) {
    if (max_horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    const int p = model.ar_order();
    const int q = model.ma_order();
    if (origin.observed.size() != static_cast<std::size_t>(p)) {
        throw std::invalid_argument("forecast origin needs exactly p observed values");
    }
    if (origin.innovations.size() < static_cast<std::size_t>(q)) {
        throw MissingInnovationTail("forecast origin needs the last q innovations");
    }
    if (origin.innovations.size() > static_cast<std::size_t>(q)) {
        throw std::invalid_argument("forecast origin has more than q innovations");
    }

    ForecastReport report;
    report.origin = origin.time;
    report.rows.reserve(static_cast<std::size_t>(max_horizon));
    for (int h = 1; h <= max_horizon; ++h) {
        const Time t = origin.time + h;
        const GreenTable table = xi_recurrence(model, t, h);

        HorizonForecast row;
        row.horizon = h;
        row.target_time = t;
        row.target_season = model.clock().season(t);

        double point = 0.0;
        for (int r = 0; r < h; ++r) point += table.xi(r) * model.drift(t - r);
        const auto w = homogeneous_weights(model, origin.time, h, table.values());
        for (int m = 0; m < p; ++m) point += w[m] * origin.observed[m];
        if (q > 0) {
            // xi'_{t,r} multiplies eps_{t-r} = eps_{tau-(r-h)}
            const auto known = xi_prime(model, table, h);
            for (int k = 0; k < q; ++k) row.known_innovation_term += known[k] * origin.innovations[k];
            point += row.known_innovation_term;
        }
        row.point = point;
        row.fe_coeffs = error_weights(model, table, h);
        row.mse = weighted_variance(model, t, row.fe_coeffs);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace parma
