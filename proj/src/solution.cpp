#include "parma/solution.hpp"

#include <stdexcept>

#include "parma/greens.hpp"

namespace parma {

double SolutionInput::innovation_at(Time s, int q) const {
    const Time first = origin - q + 1;
    if (s < first || s > target()) throw std::out_of_range("innovation outside supplied path");
    return innovations[static_cast<std::size_t>(s - first)];
}

void check_input(const PeriodicModel& model, const SolutionInput& input) {
    if (input.lead < 0) throw std::invalid_argument("lead must be >= 0");
    if (input.initial.size() != static_cast<std::size_t>(model.ar_order())) {
        throw std::invalid_argument("initial values: expected exactly p entries");
    }
    const auto want = static_cast<std::size_t>(input.lead + model.ma_order());
    if (input.innovations.size() != want) {
        throw std::invalid_argument("innovations: expected lead + q entries");
    }
}

std::vector<double> homogeneous_weights(const PeriodicModel& model, Time origin, int lead,
                                        const std::vector<double>& xi) {
    const int p = model.ar_order();
    auto xi_at = [&](int r) { return r < 0 ? 0.0 : xi[static_cast<std::size_t>(r)]; };
    std::vector<double> w(static_cast<std::size_t>(p), 0.0);
    if (p == 0) return w;
    w[0] = xi_at(lead);
    for (int m = 1; m <= p - 1; ++m) {
        double acc = 0.0;
        for (int i = 1; i <= p - m; ++i) {
            acc += model.phi(m + i, origin + i) * xi_at(lead - i);
        }
        w[m] = acc;
    }
    return w;
}

SolutionDecomposition general_solution(const PeriodicModel& model, const SolutionInput& input) {
    check_input(model, input);
    const int q = model.ma_order();
    const int lead = input.lead;
    const Time t = input.target();
    const GreenTable table = xi_recurrence(model, t, lead);

    SolutionDecomposition out;
    const auto w = homogeneous_weights(model, input.origin, lead, table.values());
    for (std::size_t m = 0; m < w.size(); ++m) out.hom += w[m] * input.initial[m];

    for (int r = 0; r < lead; ++r) {
        const double xi = table.xi(r);
        const Time s = t - r;
        out.par_drift += xi * model.drift(s);
        double u = input.innovation_at(s, q);
        for (int j = 1; j <= q; ++j) u += model.theta(j, s) * input.innovation_at(s - j, q);
        out.par_noise += xi * u;
    }
    out.total = out.hom + out.par_drift + out.par_noise;
    return out;
}

double direct_recursion(const PeriodicModel& model, const SolutionInput& input) {
    check_input(model, input);
    const int p = model.ar_order();
    const int q = model.ma_order();
    // history[k] = y_{tau-p+1+k}
    std::vector<double> history(input.initial.rbegin(), input.initial.rend());
    history.reserve(history.size() + static_cast<std::size_t>(input.lead));
    if (input.lead == 0) return p > 0 ? input.initial.front() : 0.0;
    for (Time s = input.origin + 1; s <= input.target(); ++s) {
        double y = model.drift(s) + input.innovation_at(s, q);
        for (int j = 1; j <= q; ++j) y += model.theta(j, s) * input.innovation_at(s - j, q);
        const std::size_t now = history.size();
        for (int m = 1; m <= p; ++m) y += model.phi(m, s) * history[now - m];
        history.push_back(y);
    }
    return history.back();
}

} // namespace parma
