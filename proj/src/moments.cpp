#include "parma/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parma/greens.hpp"
#include "parma/solution.hpp"

namespace parma {

namespace {

constexpr int kTruncationCap = 10000;
constexpr double kRelativeTail = 1e-14;

// log|xi_{t,k}| for k = 0..R, computed with periodic rescaling so explosive and
// strongly damped models neither overflow nor underflow.
std::vector<double> log_abs_xi(const PeriodicModel& model, Time t, int probe) {
    const int p = model.ar_order();
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(static_cast<std::size_t>(probe) + 1, ninf);
    logs[0] = 0.0;
    if (p == 0) return logs;
    std::vector<double> v(static_cast<std::size_t>(probe) + 1, 0.0);
    v[0] = 1.0;
    double scale = 0.0;  // log of the factor removed from v so far
    for (int k = 1; k <= probe; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= std::min(p, k); ++i) acc += model.phi(i, t - k + i) * v[k - i];
        v[k] = acc;
        logs[k] = acc == 0.0 ? ninf : std::log(std::abs(acc)) + scale;
        double big = 0.0;
        for (int i = 0; i < std::min(p, k + 1); ++i) big = std::max(big, std::abs(v[k - i]));
        if (big > 1e100 || (big < 1e-100 && big > 0.0)) {
            const double f = 1.0 / big;
            for (int i = 0; i < std::min(p, k + 1); ++i) v[k - i] *= f;
            scale += std::log(big);
        }
    }
    return logs;
}

double window_max(const std::vector<double>& logs, int hi, int width) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = std::max(0, hi - width + 1); k <= hi; ++k) best = std::max(best, logs[k]);
    return best;
}

// c_{t,0..n-1}: xi for pure AR, xi* otherwise
std::vector<double> weights(const PeriodicModel& model, Time t, int n) {
    const GreenTable table = xi_recurrence(model, t, n - 1);
    if (model.ma_order() == 0) return table.values();
    return xi_star(model, table, n);
}

struct Context {
    const PeriodicModel& model;
    ConvergenceDiagnostic diagnostic;
    int truncation;
};

Context make_context(const PeriodicModel& model, int truncation) {
    Context ctx{model, check_convergence(model), 0};
    if (!ctx.diagnostic.pass) {
        throw NotConvergent("model fails the convergence diagnostic (per-period growth " +
                            std::to_string(ctx.diagnostic.per_period_growth) + ")");
    }
    ctx.truncation = truncation > 0 ? truncation : default_truncation(model);
    return ctx;
}

// Largest |c_{t,r}| over the last few periods before R, worst season.
double tail_weight(const Context& ctx) {
    const PeriodicModel& model = ctx.model;
    const int l = model.period_length();
    const int R = ctx.truncation;
    const int width = std::min(R + 1, 4 * l);
    double worst = 0.0;
    for (int s = 1; s <= l; ++s) {
        const auto c = weights(model, s, R + 1);
        for (int r = R - width + 1; r <= R; ++r) worst = std::max(worst, std::abs(c[r]));
    }
    return worst;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double mean_at(const Context& ctx, Time t) {
    const auto xi = xi_recurrence(ctx.model, t, ctx.truncation);
    double acc = 0.0;
    for (int r = 0; r <= ctx.truncation; ++r) acc += xi.xi(r) * ctx.model.drift(t - r);
    return acc;
}

double covariance_at(const Context& ctx, Time t, int lag) {
    const int R = ctx.truncation;
    const auto lead = weights(ctx.model, t, lag + R + 1);
    const auto base = lag == 0 ? lead : weights(ctx.model, t - lag, R + 1);
    double acc = 0.0;
    for (int r = 0; r <= R; ++r) {
        acc += lead[lag + r] * base[r] * ctx.model.sigma2(t - lag - r);
    }
    return acc;
}

double one_minus(double g) { return std::max(1.0 - g, std::numeric_limits<double>::epsilon()); }

TruncatedValue covariance_value(const Context& ctx, int season, int lag) {
    const PeriodicModel& model = ctx.model;
    const double m = tail_weight(ctx);
    const double g = ctx.diagnostic.per_period_growth;
    const double smax = max_abs(model.spec().sigma2);
    const double bound = model.period_length() * m * m * smax / one_minus(g);
    return {covariance_at(ctx, model.clock().first_time_of(season), lag), bound, ctx.truncation};
}

void check_season(const PeriodicModel& model, int season) {
    if (season < 1 || season > model.period_length()) throw std::out_of_range("season out of range");
}

} // namespace

ConvergenceDiagnostic check_convergence(const PeriodicModel& model,
                                        const ConvergenceOptions& options) {
    const int l = model.period_length();
    const int probe = options.probe_lag > 0 ? options.probe_lag : 400 * l;
    if (probe < 2 * l) throw std::invalid_argument("probe lag must be >= 2l");

    ConvergenceDiagnostic d;
    d.probe_lag = probe;
    d.margin = options.margin;
    const int width = l * std::max(1, (16 + l - 1) / l);
    const int mid = std::max(l, (probe / 2) / l * l);
    double worst_log_rate = -std::numeric_limits<double>::infinity();
    double worst_tail = 0.0;
    for (int s = 1; s <= l; ++s) {
        const auto logs = log_abs_xi(model, s, probe);
        const double end = window_max(logs, probe, width);
        const double middle = window_max(logs, mid, width);
        const double all = window_max(logs, probe, probe + 1);
        if (std::isinf(end)) continue;  // decayed to exact zero
        const double rate = std::isinf(middle) ? end / probe : (end - middle) / (probe - mid);
        worst_log_rate = std::max(worst_log_rate, rate);
        worst_tail = std::max(worst_tail, std::exp(end - all));
    }
    d.rho_hat = std::exp(worst_log_rate);
    d.per_period_growth = std::exp(worst_log_rate * l);
    d.tail_ratio = worst_tail;
    d.pass = d.per_period_growth < 1.0 - options.margin && d.tail_ratio < options.tail_threshold;
    return d;
}

int default_truncation(const PeriodicModel& model) {
    if (!check_convergence(model).pass) throw NotConvergent("model fails the convergence diagnostic");
    const int l = model.period_length();
    const int cap = std::max(l, kTruncationCap / l * l);
    std::vector<std::vector<double>> per_season;
    double peak = 0.0;
    for (int s = 1; s <= l; ++s) {
        per_season.push_back(weights(model, s, cap + 1));
        peak = std::max(peak, max_abs(per_season.back()));
    }
    for (int R = l; R <= cap; R += l) {
        double tail = 0.0;
        for (const auto& c : per_season) {
            for (int r = R - l + 1; r <= R; ++r) tail = std::max(tail, std::abs(c[r]));
        }
        if (tail < kRelativeTail * peak) return R;
    }
    return cap;
}

TruncatedValue unconditional_mean(const PeriodicModel& model, int season, int truncation) {
    check_season(model, season);
    const Context ctx = make_context(model, truncation);
    const double m = tail_weight(ctx);
    const double bound = model.period_length() * m * max_abs(model.spec().drift) /
                         one_minus(ctx.diagnostic.per_period_growth);
    return {mean_at(ctx, model.clock().first_time_of(season)), bound, ctx.truncation};
}

TruncatedValue unconditional_variance(const PeriodicModel& model, int season, int truncation) {
    check_season(model, season);
    return covariance_value(make_context(model, truncation), season, 0);
}

TruncatedValue autocovariance(const PeriodicModel& model, int season, int lag, int truncation) {
    check_season(model, season);
    if (lag < 0) throw std::invalid_argument("lag must be >= 0");
    return covariance_value(make_context(model, truncation), season, lag);
}

double autocovariance_by_recursion(const PeriodicModel& model, int season, int lag,
                                   int truncation) {
    check_season(model, season);
    if (lag < 1) throw std::invalid_argument("recursion form needs lag >= 1");
    const Context ctx = make_context(model, truncation);
    const int p = model.ar_order();
    const int q = model.ma_order();
    const Time t = model.clock().first_time_of(season);
    const Time origin = t - lag;

    const GreenTable table = xi_recurrence(model, t, lag);
    const auto w = homogeneous_weights(model, origin, lag, table.values());
    double acc = 0.0;
    for (int m = 0; m < p; ++m) acc += w[m] * covariance_at(ctx, origin, m);
    if (q > 0) {
        const auto known = xi_prime(model, table, lag);
        const auto star = weights(model, origin, q);
        for (int r = 0; r < q; ++r) acc += star[r] * known[r] * model.sigma2(origin - r);
    }
    return acc;
}

MomentProfile moment_profile(const PeriodicModel& model, int max_lag, int truncation,
                             const ConvergenceOptions& options) {
    if (max_lag < 0) throw std::invalid_argument("max lag must be >= 0");
    MomentProfile out;
    out.diagnostic = check_convergence(model, options);
    if (!out.diagnostic.pass) throw NotConvergent("model fails the convergence diagnostic");
    Context ctx{model, out.diagnostic, truncation > 0 ? truncation : default_truncation(model)};
    out.truncation = ctx.truncation;

    const int l = model.period_length();
    const double m = tail_weight(ctx);
    const double g = one_minus(ctx.diagnostic.per_period_growth);
    const double cov_bound = l * m * m * max_abs(model.spec().sigma2) / g;
    const double mean_bound = l * m * max_abs(model.spec().drift) / g;
    out.tail_bound = std::max(cov_bound, mean_bound);
    for (int s = 1; s <= l; ++s) {
        const Time t = model.clock().first_time_of(s);
        SeasonMoments sm;
        sm.season = s;
        sm.mean = mean_at(ctx, t);
        for (int k = 0; k <= max_lag; ++k) sm.autocovariance.push_back(covariance_at(ctx, t, k));
        sm.variance = sm.autocovariance.front();
        out.seasons.push_back(std::move(sm));
    }
    return out;
}

} // namespace parma
