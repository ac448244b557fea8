#include "parma/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace parma {

namespace {

Time floor_div(Time a, Time b) noexcept {
    Time q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::string shape_message(const std::string& what, std::size_t got, std::size_t want) {
    std::ostringstream os;
    os << what << " has " << got << " entries, expected " << want;
    return os.str();
}

void check_vector(const std::vector<double>& v, std::size_t want, const std::string& field,
                  std::vector<ModelIssue>& out) {
    if (v.size() != want) {
        out.push_back({IssueKind::ShapeMismatch, field, shape_message(field, v.size(), want)});
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            out.push_back({IssueKind::NonFiniteCoefficient, field + "[" + std::to_string(i) + "]",
                           "non-finite value"});
        }
    }
}

void check_rows(const std::vector<std::vector<double>>& rows, int order, int l,
                const std::string& field, std::vector<ModelIssue>& out) {
    if (order < 0) {
        out.push_back({IssueKind::ShapeMismatch, field, "negative order"});
        return;
    }
    if (rows.size() != static_cast<std::size_t>(order)) {
        out.push_back({IssueKind::ShapeMismatch, field,
                       shape_message(field, rows.size(), static_cast<std::size_t>(order)) +
                           " rows"});
    }
    for (std::size_t m = 0; m < rows.size(); ++m) {
        check_vector(rows[m], static_cast<std::size_t>(l), field + "[" + std::to_string(m) + "]",
                     out);
    }
}

} // namespace

SeasonClock::SeasonClock(int period_length) : l_(period_length) {
    if (l_ < 1) throw std::invalid_argument("period length must be >= 1");
}

ClockPosition SeasonClock::decompose(Time t) const noexcept {
    const Time T = floor_div(t - 1, l_);
    return {T, static_cast<int>(t - T * l_)};
}

Time SeasonClock::compose(ClockPosition pos) const noexcept {
    return pos.period * l_ + pos.season;
}

int SeasonClock::slot(Time t) const noexcept {
    const Time r = (t - 1) % l_;
    return static_cast<int>(r < 0 ? r + l_ : r);
}

Time SeasonClock::first_time_of(int season) const {
    if (season < 1 || season > l_) throw std::out_of_range("season out of range");
    return season;
}

const char* to_string(IssueKind kind) noexcept {
    switch (kind) {
    case IssueKind::NonPositiveVariance: return "NonPositiveVariance";
    case IssueKind::ShapeMismatch: return "ShapeMismatch";
    case IssueKind::NonFiniteCoefficient: return "NonFiniteCoefficient";
    }
    return "Unknown";
}

namespace {

std::string join_issues(const std::vector<ModelIssue>& issues) {
    std::ostringstream os;
    os << "invalid model:";
    for (const auto& issue : issues) {
        os << " [" << to_string(issue.kind) << " " << issue.field << ": " << issue.message << "]";
    }
    return os.str();
}

} // namespace

ModelValidationError::ModelValidationError(std::vector<ModelIssue> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<ModelIssue> lint(const ModelSpec& spec) {
    std::vector<ModelIssue> issues;
    if (spec.l < 1) {
        issues.push_back({IssueKind::ShapeMismatch, "l", "period length must be >= 1"});
        return issues;
    }
    const auto l = static_cast<std::size_t>(spec.l);
    check_vector(spec.drift, l, "drift", issues);
    check_rows(spec.ar, spec.p, spec.l, "ar", issues);
    check_rows(spec.ma, spec.q, spec.l, "ma", issues);
    check_vector(spec.sigma2, l, "sigma2", issues);
    for (std::size_t s = 0; s < spec.sigma2.size(); ++s) {
        const double v = spec.sigma2[s];
        if (std::isfinite(v) && v <= 0.0) {
            issues.push_back({IssueKind::NonPositiveVariance, "sigma2[" + std::to_string(s) + "]",
                              "variance must be > 0"});
        }
    }
    return issues;
}

ValidationResult validate(const ModelSpec& spec) {
    ValidationResult result;
    result.issues = lint(spec);
    if (result.issues.empty()) result.model.emplace(spec);
    return result;
}

PeriodicModel::PeriodicModel(ModelSpec spec)
    : spec_(std::move(spec)), clock_(spec_.l >= 1 ? spec_.l : 1) {
    auto issues = lint(spec_);
    if (!issues.empty()) throw ModelValidationError(std::move(issues));
}

PeriodicModel PeriodicModel::constant(std::vector<double> ar, std::vector<double> ma, double drift,
                                      double sigma2) {
    ModelSpec spec;
    spec.l = 1;
    spec.p = static_cast<int>(ar.size());
    spec.q = static_cast<int>(ma.size());
    spec.drift = {drift};
    for (double a : ar) spec.ar.push_back({a});
    for (double b : ma) spec.ma.push_back({b});
    spec.sigma2 = {sigma2};
    return PeriodicModel(std::move(spec));
}

double PeriodicModel::phi(int m, Time t) const {
    if (m < 1 || m > spec_.p) throw std::out_of_range("AR lag out of range");
    return spec_.ar[m - 1][clock_.slot(t)];
}

double PeriodicModel::theta(int j, Time t) const {
    if (j < 1 || j > spec_.q) throw std::out_of_range("MA lag out of range");
    return spec_.ma[j - 1][clock_.slot(t)];
}

double PeriodicModel::phi_at_season(int m, int season) const {
    if (m < 1 || m > spec_.p) throw std::out_of_range("AR lag out of range");
    if (season < 1 || season > spec_.l) throw std::out_of_range("season out of range");
    return spec_.ar[m - 1][season - 1];
}

double PeriodicModel::theta_at_season(int j, int season) const {
    if (j < 1 || j > spec_.q) throw std::out_of_range("MA lag out of range");
    if (season < 1 || season > spec_.l) throw std::out_of_range("season out of range");
    return spec_.ma[j - 1][season - 1];
}

bool PeriodicModel::is_constant() const noexcept {
    auto flat = [](const std::vector<double>& row) {
        for (double v : row) {
            if (v != row.front()) return false;
        }
        return true;
    };
    if (!flat(spec_.drift) || !flat(spec_.sigma2)) return false;
    for (const auto& row : spec_.ar) {
        if (!flat(row)) return false;
    }
    for (const auto& row : spec_.ma) {
        if (!flat(row)) return false;
    }
    return true;
}

} // namespace parma
