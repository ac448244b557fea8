#include "parma/greens.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

namespace parma {

FundamentalMatrix build_fundamental(const PeriodicModel& model, Time t, int k) {
    if (k < 1) throw std::invalid_argument("fundamental matrix order must be >= 1");
    const int p = model.ar_order();
    FundamentalMatrix out{k, t, Eigen::MatrixXd::Zero(k, k)};
    for (int i = 1; i <= k; ++i) {
        if (i + 1 <= k) out.entries(i - 1, i) = -1.0;
        for (int m = 0; m <= p - 1; ++m) {
            const int j = i - m;
            if (j < 1) break;
            out.entries(i - 1, j - 1) = model.phi(1 + m, t - k + i);
        }
    }
    return out;
}

GreenTable::GreenTable(Time anchor, int season, std::vector<double> xi)
    : anchor_(anchor), season_(season), xi_(std::move(xi)) {
    if (xi_.empty()) throw std::invalid_argument("empty Green table");
    overflow_ = !(std::abs(xi_.back()) <= kXiOverflowThreshold);
}

double GreenTable::xi(int r) const {
    if (r < 0) return 0.0;
    if (r > horizon()) throw std::out_of_range("lag beyond Green table horizon");
    return xi_[static_cast<std::size_t>(r)];
}

GreenTable xi_recurrence(const PeriodicModel& model, Time t, int horizon) {
    if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    const int p = model.ar_order();
    const auto& ar = model.spec().ar;
    const SeasonClock& clock = model.clock();
    std::vector<double> xi(static_cast<std::size_t>(horizon) + 1, 0.0);
    xi[0] = 1.0;
    for (int k = 1; k <= horizon; ++k) {
        double acc = 0.0;
        const int top = std::min(p, k);
        for (int i = 1; i <= top; ++i) {
            acc += ar[i - 1][clock.slot(t - k + i)] * xi[k - i];
        }
        xi[k] = acc;
    }
    return GreenTable(t, clock.season(t), std::move(xi));
}

std::vector<double> xi_star(const PeriodicModel& model, const GreenTable& table, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (table.horizon() < horizon - 1) throw std::out_of_range("Green table too short");
    const Time t = table.anchor();
    const int q = model.ma_order();
    std::vector<double> out(static_cast<std::size_t>(horizon));
    for (int r = 0; r < horizon; ++r) {
        double acc = table.xi(r);
        for (int j = 1; j <= q && j <= r; ++j) {
            acc += table.xi(r - j) * model.theta(j, t - r + j);
        }
        out[r] = acc;
    }
    return out;
}

std::vector<double> xi_star(const PeriodicModel& model, Time t, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    return xi_star(model, xi_recurrence(model, t, horizon - 1), horizon);
}

std::vector<double> xi_prime(const PeriodicModel& model, const GreenTable& table, int lead) {
    if (lead < 1) throw std::invalid_argument("lead must be >= 1");
    const int q = model.ma_order();
    if (table.horizon() < lead - 1) throw std::out_of_range("Green table too short");
    const Time t = table.anchor();
    std::vector<double> out(static_cast<std::size_t>(q), 0.0);
    for (int r = lead; r <= lead - 1 + q; ++r) {
        double acc = 0.0;
        for (int j = r - lead + 1; j <= q; ++j) {
            acc += table.xi(r - j) * model.theta(j, t - r + j);
        }
        out[r - lead] = acc;
    }
    return out;
}

std::vector<double> xi_prime(const PeriodicModel& model, Time t, int lead) {
    if (lead < 1) throw std::invalid_argument("lead must be >= 1");
    return xi_prime(model, xi_recurrence(model, t, lead - 1), lead);
}

GreenBank::GreenBank(const PeriodicModel& model, int horizon, bool parallel)
    : clock_(model.clock()), horizon_(horizon) {
    const int l = model.period_length();
    std::vector<std::optional<GreenTable>> slots(static_cast<std::size_t>(l));
    auto build = [&](int season) {
        slots[season - 1].emplace(xi_recurrence(model, clock_.first_time_of(season), horizon));
    };
    if (parallel && l > 1) {
        const int n = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, l);
        std::vector<std::jthread> workers;
        workers.reserve(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w) {
            workers.emplace_back([&, w] {
                for (int s = 1 + w; s <= l; s += n) build(s);
            });
        }
    } else {
        for (int s = 1; s <= l; ++s) build(s);
    }
    tables_.reserve(slots.size());
    for (auto& slot : slots) tables_.push_back(std::move(*slot));
}

const GreenTable& GreenBank::for_time(Time t) const { return tables_[clock_.slot(t)]; }

const GreenTable& GreenBank::for_season(int season) const {
    if (season < 1 || season > clock_.period_length()) throw std::out_of_range("season out of range");
    return tables_[season - 1];
}

} // namespace parma
