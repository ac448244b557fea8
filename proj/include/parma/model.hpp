#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace parma {

/// Absolute time index. Any integer is a valid time.
using Time = std::int64_t;

/// Position of an absolute time on the season clock: t = period * l + season,
/// with season in 1..l.
struct ClockPosition {
    Time period = 0;
    int season = 1;

    friend bool operator==(const ClockPosition&, const ClockPosition&) = default;
};

/// Maps absolute time to (period, season) for a period length l.
///
/// Seasons are 1-based in every public signature. Time 0 belongs to season l
/// of period -1, so t = l is season l of period 0.
class SeasonClock {
public:
    explicit SeasonClock(int period_length);

    int period_length() const noexcept { return l_; }

    ClockPosition decompose(Time t) const noexcept;
    Time compose(ClockPosition pos) const noexcept;

    /// 1-based season of t.
    int season(Time t) const noexcept { return decompose(t).season; }

    /// 0-based season slot of t, for table lookup.
    int slot(Time t) const noexcept;

    /// First time >= 1 whose season is `season`.
    Time first_time_of(int season) const;

private:
    int l_;
};

/// Unvalidated coefficient set as read from a file or built by a caller.
///
/// ar[m-1][s-1] holds phi_{m,s}; ma[j-1][s-1] holds theta_{j,s}.
struct ModelSpec {
    int l = 1;
    int p = 0;
    int q = 0;
    std::vector<double> drift;
    std::vector<std::vector<double>> ar;
    std::vector<std::vector<double>> ma;
    std::vector<double> sigma2;
};

enum class IssueKind {
    NonPositiveVariance,
    ShapeMismatch,
    NonFiniteCoefficient,
};

const char* to_string(IssueKind kind) noexcept;

struct ModelIssue {
    IssueKind kind;
    std::string field;
    std::string message;
};

class ModelValidationError : public std::invalid_argument {
public:
    explicit ModelValidationError(std::vector<ModelIssue> issues);
    const std::vector<ModelIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ModelIssue> issues_;
};

/// A validated PARMA(p,q;l) model
///
///   y_t = phi_0(t) + sum_m phi_m(t) y_{t-m} + eps_t + sum_j theta_j(t) eps_{t-j},
///   Var(eps_t) = sigma2(t),
///
/// with every coefficient periodic in t with period l. Coefficients are stored
/// per season; the time-indexed accessors below go through the season clock.
/// Immutable after construction.
class PeriodicModel {
public:
    /// Throws ModelValidationError listing every violation.
    explicit PeriodicModel(ModelSpec spec);

    static PeriodicModel constant(std::vector<double> ar, std::vector<double> ma = {},
                                  double drift = 0.0, double sigma2 = 1.0);

    int period_length() const noexcept { return spec_.l; }
    int ar_order() const noexcept { return spec_.p; }
    int ma_order() const noexcept { return spec_.q; }
    const SeasonClock& clock() const noexcept { return clock_; }
    const ModelSpec& spec() const noexcept { return spec_; }

    /// phi_m(t), 1 <= m <= p. Throws std::out_of_range otherwise.
    double phi(int m, Time t) const;
    /// theta_j(t), 1 <= j <= q. Throws std::out_of_range otherwise.
    double theta(int j, Time t) const;
    double drift(Time t) const noexcept { return spec_.drift[clock_.slot(t)]; }
    double sigma2(Time t) const noexcept { return spec_.sigma2[clock_.slot(t)]; }

    /// phi_{m,s} by 1-based season.
    double phi_at_season(int m, int season) const;
    double theta_at_season(int j, int season) const;

    /// True when every coefficient row is identical across seasons.
    bool is_constant() const noexcept;

private:
    ModelSpec spec_;
    SeasonClock clock_;
};

struct ValidationResult {
    std::optional<PeriodicModel> model;
    std::vector<ModelIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
};

/// Checks every shape and value invariant and reports all violations.
ValidationResult validate(const ModelSpec& spec);

/// Issues only, without constructing a model.
std::vector<ModelIssue> lint(const ModelSpec& spec);

inline bool is_constant(const PeriodicModel& model) noexcept { return model.is_constant(); }

} // namespace parma
