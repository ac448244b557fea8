#pragma once

#include <Eigen/Dense>

#include <vector>

#include "parma/model.hpp"

namespace parma {

/// k x k band lower Hessenberg matrix whose determinant is xi_{t,k}.
///
/// Entry (i, j), 1-based: -1 on the superdiagonal (i = j - 1), phi_{1+m}(t-k+i)
/// where i = j + m and 0 <= m <= p-1, zero elsewhere.
struct FundamentalMatrix {
    int order = 0;
    Time anchor = 0;
    Eigen::MatrixXd entries;
};

FundamentalMatrix build_fundamental(const PeriodicModel& model, Time t, int k);

/// Green-function coefficients xi_{t,r} for a fixed anchor time t, indexed by
/// lag r. Negative lags read as the zero seeds.
class GreenTable {
public:
    GreenTable(Time anchor, int season, std::vector<double> xi);

    Time anchor() const noexcept { return anchor_; }
    int anchor_season() const noexcept { return season_; }
    int horizon() const noexcept { return static_cast<int>(xi_.size()) - 1; }

    /// xi_{t,r}; zero for r < 0. Throws std::out_of_range for r > horizon.
    double xi(int r) const;
    const std::vector<double>& values() const noexcept { return xi_; }

    /// Set when |xi_{t,H}| exceeds 1e100; values are reported as computed.
    bool overflow_warning() const noexcept { return overflow_; }

    friend bool operator==(const GreenTable& a, const GreenTable& b) { return a.xi_ == b.xi_; }

private:
    Time anchor_;
    int season_;
    std::vector<double> xi_;
    bool overflow_ = false;
};

inline constexpr double kXiOverflowThreshold = 1e100;

/// xi_{t,0..H} from the first-column expansion
///
///   xi_{t,k} = sum_{i=1}^{min(p,k)} phi_i(t-k+i) xi_{t,k-i},  xi_{t,0} = 1,
///
/// in O(p H) operations.
GreenTable xi_recurrence(const PeriodicModel& model, Time t, int horizon);

/// MA-adjusted coefficients xi*_{t,r}, r = 0..H-1:
///   xi*_{t,r} = xi_{t,r} + sum_{j=1}^q xi_{t,r-j} theta_j(t-r+j).
/// These multiply eps_{t-r} in the forecast error of a PARMA predictor.
std::vector<double> xi_star(const PeriodicModel& model, Time t, int horizon);
std::vector<double> xi_star(const PeriodicModel& model, const GreenTable& table, int horizon);

/// Coefficients xi'_{t,r}, r = lead..lead+q-1, of the innovations known at the
/// forecast origin t - lead:
///   xi'_{t,r} = sum_{j=r-lead+1}^q xi_{t,r-j} theta_j(t-r+j).
/// Empty when q = 0.
std::vector<double> xi_prime(const PeriodicModel& model, Time t, int lead);
std::vector<double> xi_prime(const PeriodicModel& model, const GreenTable& table, int lead);

/// One GreenTable per anchor season, all to the same horizon. The table for
/// any time t is the one of its season.
class GreenBank {
public:
    GreenBank(const PeriodicModel& model, int horizon, bool parallel = false);

    const GreenTable& for_time(Time t) const;
    const GreenTable& for_season(int season) const;
    int horizon() const noexcept { return horizon_; }

private:
    SeasonClock clock_;
    int horizon_;
    std::vector<GreenTable> tables_;
};

} // namespace parma
