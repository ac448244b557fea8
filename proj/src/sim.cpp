#include "parma/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "parma/moments.hpp"

namespace parma {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t k) noexcept {
    std::uint64_t z = seed + k * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double InnovationStream::uniform() {
    // 53 random bits, shifted off zero
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double InnovationStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double InnovationStream::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double InnovationStream::student_t_unit(double df) {
    if (!(df > 2.0)) throw std::invalid_argument("student-t needs df > 2 for unit variance");
    const double z = normal();
    const double chi2 = 2.0 * gamma(df / 2.0);
    return z / std::sqrt(chi2 / df) * std::sqrt((df - 2.0) / df);
}

namespace {

double draw(InnovationStream& rng, const InnovationSpec& spec) {
    switch (spec.kind) {
    case InnovationKind::Gaussian: return rng.normal();
    case InnovationKind::StudentT: return rng.student_t_unit(spec.df);
    case InnovationKind::Custom: {
        const auto n = static_cast<std::uint64_t>(spec.samples.size());
        return spec.samples[static_cast<std::size_t>(rng.next_u64() % n)];
    }
    }
    return 0.0;
}

void check_innovations(const InnovationSpec& spec) {
    if (spec.kind == InnovationKind::StudentT && !(spec.df > 2.0)) {
        throw std::invalid_argument("student-t innovations need df > 2");
    }
    if (spec.kind == InnovationKind::Custom && spec.samples.empty()) {
        throw std::invalid_argument("custom innovations need at least one sample");
    }
}

void check_plan_shape(const SimPlan& plan) {
    if (plan.length < 0 || plan.burn_in < 0) throw std::invalid_argument("negative path length");
    if (plan.replications < 1) throw std::invalid_argument("replications must be >= 1");
    check_innovations(plan.innovations);
    if (!plan.sigma2_override.empty()) {
        if (plan.sigma2_override.size() != static_cast<std::size_t>(plan.length)) {
            throw std::invalid_argument("sigma2 override must have one entry per retained step");
        }
        for (double v : plan.sigma2_override) {
            if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("sigma2 override must be > 0");
        }
    }
}

} // namespace

void check_plan(const PeriodicModel& model, const SimPlan& plan) {
    check_plan_shape(plan);
    if (plan.burn_in < 10 * model.period_length() && check_convergence(model).pass) {
        throw std::invalid_argument("burn-in must be at least 10 periods for a convergent model");
    }
}

SamplePath simulate(const PeriodicModel& model, const SimPlan& plan, int replication) {
    const int p = model.ar_order();
    const int q = model.ma_order();
    check_plan_shape(plan);
    InnovationStream rng = InnovationStream::for_replication(
        plan.seed, static_cast<std::uint64_t>(replication));

    const std::size_t lead = static_cast<std::size_t>(std::max(p, q));
    const std::size_t total = static_cast<std::size_t>(plan.burn_in + plan.length);
    std::vector<double> y(lead + total, 0.0);
    std::vector<double> e(lead + total, 0.0);
    const Time first = plan.start_time - plan.burn_in;
    for (std::size_t k = 0; k < total; ++k) {
        const Time t = first + static_cast<Time>(k);
        const std::size_t i = lead + k;
        const long retained = static_cast<long>(k) - plan.burn_in;
        const double s2 = (retained >= 0 && !plan.sigma2_override.empty())
                              ? plan.sigma2_override[static_cast<std::size_t>(retained)]
                              : model.sigma2(t);
        e[i] = std::sqrt(s2) * draw(rng, plan.innovations);
        double v = model.drift(t) + e[i];
        for (int j = 1; j <= q; ++j) v += model.theta(j, t) * e[i - j];
        for (int m = 1; m <= p; ++m) v += model.phi(m, t) * y[i - m];
        y[i] = v;
    }

    SamplePath path;
    path.start_time = plan.start_time;
    path.start_season = model.clock().season(plan.start_time);
    const std::size_t begin = lead + static_cast<std::size_t>(plan.burn_in);
    path.y.assign(y.begin() + static_cast<long>(begin), y.end());
    path.eps.assign(e.begin() + static_cast<long>(begin), e.end());
    path.presample_y.assign(y.begin() + static_cast<long>(begin - p), y.begin() + static_cast<long>(begin));
    path.presample_eps.assign(e.begin() + static_cast<long>(begin - q), e.begin() + static_cast<long>(begin));
    return path;
}

std::vector<SamplePath> simulate_batch(const PeriodicModel& model, const SimPlan& plan) {
    check_plan(model, plan);
    std::vector<SamplePath> out;
    out.reserve(static_cast<std::size_t>(plan.replications));
    for (int r = 0; r < plan.replications; ++r) out.push_back(simulate(model, plan, r));
    return out;
}

double replay(const PeriodicModel& model, const SamplePath& path, std::size_t i) {
    if (i >= path.y.size()) throw std::out_of_range("path index out of range");
    const Time t = path.start_time + static_cast<Time>(i);
    auto y_at = [&](long k) {
        return k >= 0 ? path.y[static_cast<std::size_t>(k)]
                      : path.presample_y[path.presample_y.size() + static_cast<std::size_t>(k)];
    };
    auto e_at = [&](long k) {
        return k >= 0 ? path.eps[static_cast<std::size_t>(k)]
                      : path.presample_eps[path.presample_eps.size() + static_cast<std::size_t>(k)];
    };
    const long n = static_cast<long>(i);
    double v = model.drift(t) + e_at(n);
    for (int j = 1; j <= model.ma_order(); ++j) v += model.theta(j, t) * e_at(n - j);
    for (int m = 1; m <= model.ar_order(); ++m) v += model.phi(m, t) * y_at(n - m);
    return v;
}

void write_path_csv(std::ostream& os, const PeriodicModel& model, const SamplePath& path) {
    os << "time,season,y,eps\n";
    char buf[128];
    for (std::size_t i = 0; i < path.y.size(); ++i) {
        const Time t = path.start_time + static_cast<Time>(i);
        std::snprintf(buf, sizeof buf, "%lld,%d,%.12g,%.12g\n", static_cast<long long>(t),
                      model.clock().season(t), path.y[i], path.eps[i]);
        os << buf;
    }
}

namespace {

struct Moments4 {
    std::vector<double> e1, e2, e4;
    explicit Moments4(int h) : e1(h, 0.0), e2(h, 0.0), e4(h, 0.0) {}
    void add(const Moments4& o) {
        for (std::size_t i = 0; i < e1.size(); ++i) {
            e1[i] += o.e1[i];
            e2[i] += o.e2[i];
            e4[i] += o.e4[i];
        }
    }
};

} // namespace

std::vector<McRow> mc_forecast_experiment(const PeriodicModel& model, const ForecastOrigin& origin,
                                          int max_horizon, const McOptions& options) {
    if (options.replications < 2) throw std::invalid_argument("need at least 2 replications");
    check_innovations(options.innovations);
    const ForecastReport report = predict(model, origin, max_horizon);
    const int p = model.ar_order();
    const int q = model.ma_order();
    const int H = max_horizon;
    const Time tau = origin.time;

    auto run_range = [&](int begin, int end) {
        Moments4 acc(H);
        // buffers hold [pre-origin values..., future values], oldest first
        std::vector<double> y(static_cast<std::size_t>(p + H));
        std::vector<double> e(static_cast<std::size_t>(q + H));
        for (int r = begin; r < end; ++r) {
            InnovationStream rng = InnovationStream::for_replication(options.seed,
                                                                     static_cast<std::uint64_t>(r));
            for (int m = 0; m < p; ++m) y[p - 1 - m] = origin.observed[m];
            for (int j = 0; j < q; ++j) e[q - 1 - j] = origin.innovations[j];
            for (int h = 1; h <= H; ++h) {
                const Time t = tau + h;
                const std::size_t iy = static_cast<std::size_t>(p + h - 1);
                const std::size_t ie = static_cast<std::size_t>(q + h - 1);
                e[ie] = std::sqrt(model.sigma2(t)) * draw(rng, options.innovations);
                double v = model.drift(t) + e[ie];
                for (int j = 1; j <= q; ++j) v += model.theta(j, t) * e[ie - j];
                for (int m = 1; m <= p; ++m) v += model.phi(m, t) * y[iy - m];
                y[iy] = v;
                const double err = v - report.rows[h - 1].point;
                acc.e1[h - 1] += err;
                acc.e2[h - 1] += err * err;
                acc.e4[h - 1] += err * err * err * err;
            }
        }
        return acc;
    };

    // Fixed chunking keeps the floating-point reduction order independent of
    // the number of worker threads.
    constexpr int kChunks = 64;
    const int N = options.replications;
    std::vector<Moments4> partial(kChunks, Moments4(H));
    const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, kChunks);
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int c = w; c < kChunks; c += workers) {
                    const int begin = static_cast<int>(static_cast<long long>(N) * c / kChunks);
                    const int end = static_cast<int>(static_cast<long long>(N) * (c + 1) / kChunks);
                    partial[c] = run_range(begin, end);
                }
            });
        }
    }
    Moments4 total(H);
    for (const auto& part : partial) total.add(part);

    std::vector<McRow> rows;
    const double n = static_cast<double>(N);
    for (int h = 1; h <= H; ++h) {
        McRow row;
        row.horizon = h;
        const double m1 = total.e1[h - 1] / n;
        const double m2 = total.e2[h - 1] / n;
        const double m4 = total.e4[h - 1] / n;
        row.bias = m1;
        row.bias_z = m1 / std::sqrt(std::max(m2 - m1 * m1, 0.0) / n);
        row.empirical_mse = m2;
        row.theoretical_mse = report.rows[h - 1].mse;
        row.mse_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / (n - 1.0));
        row.mse_z = (m2 - row.theoretical_mse) / row.mse_se;
        row.pass = std::abs(row.mse_z) <= options.z_threshold;
        rows.push_back(row);
    }
    return rows;
}

} // namespace parma
