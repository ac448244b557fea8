#pragma once

#include <vector>

#include "parma/model.hpp"

namespace parma {

/// Data needed to solve the model forward from an origin tau to t = tau + lead.
///
/// initial holds y_tau, y_{tau-1}, ..., y_{tau-p+1} (newest first).
/// innovations holds eps_{tau-q+1}, ..., eps_t in time order (oldest first),
/// lead + q values in total.
struct SolutionInput {
    Time origin = 0;
    int lead = 0;
    std::vector<double> initial;
    std::vector<double> innovations;

    Time target() const noexcept { return origin + lead; }
    /// eps at absolute time s, tau-q+1 <= s <= t.
    double innovation_at(Time s, int q) const;
};

/// Throws std::invalid_argument when the input does not match the model.
void check_input(const PeriodicModel& model, const SolutionInput& input);

struct SolutionDecomposition {
    double hom = 0.0;        ///< initial-value part
    double par_drift = 0.0;  ///< sum_r xi_{t,r} phi_0(t-r)
    double par_noise = 0.0;  ///< sum_r xi_{t,r} u_{t-r}
    double total = 0.0;
};

/// Closed-form general solution: homogeneous part from the p initial values
/// plus the particular part driven by drift and u_t = eps_t + sum_j theta_j(t) eps_{t-j}.
SolutionDecomposition general_solution(const PeriodicModel& model, const SolutionInput& input);

/// Iterates the difference equation step by step from the origin.
double direct_recursion(const PeriodicModel& model, const SolutionInput& input);

/// Coefficient of y_{tau-m} in the homogeneous part, m = 0..p-1:
///   sum_{i=1}^{p-m} phi_{m+i}(tau+i) xi_{t,lead-i}.
/// For m = 0 this equals xi_{t,lead}. `xi` must cover lags 0..lead.
std::vector<double> homogeneous_weights(const PeriodicModel& model, Time origin, int lead,
                                        const std::vector<double>& xi);

} // namespace parma
