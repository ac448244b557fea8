#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "parma/model.hpp"

namespace parma {

/// Vector-of-seasons form of a periodic model. Stacking the l seasons of
/// period T into y_T = (y_{1,T}, ..., y_{l,T})' gives the constant-coefficient
/// system
///
///   Phi_0 y_T = Phi_1 y_{T-1} + ... + Phi_P y_{T-P} + d + Theta_0 eps_T + ... + Theta_Q eps_{T-Q}
///
/// with P = ceil(p/l) and Q = ceil(q/l).
struct VSForm {
    int l = 1;
    int P = 0;
    int Q = 0;
    std::vector<Eigen::MatrixXd> phi;    ///< Phi_0..Phi_P
    std::vector<Eigen::MatrixXd> theta;  ///< Theta_0..Theta_Q
    Eigen::VectorXd drift;               ///< (phi_{0,1}, ..., phi_{0,l})'
};

/// Phi_0: 1 on the diagonal, -phi_{i-j,i} below it.
/// Phi_M(i, j) = phi_{i+lM-j, i}; entries with lag > p are zero.
/// Theta_0 carries +theta_{i-j,i} below the diagonal and Theta_N(i, j) =
/// theta_{i+lN-j, i}, matching the "+" sign of the MA polynomial.
VSForm build_vsform(const PeriodicModel& model);

enum class Verdict { Stationary, NonStationary, Indeterminate };

const char* to_string(Verdict v) noexcept;

struct StationarityVerdict {
    /// Largest eigenvalue modulus of the companion matrix of Phi_0^{-1}(Phi_1, ..., Phi_P).
    double spectral_radius = 0.0;
    bool stationary = false;
    /// Stationary/NonStationary, or Indeterminate within `band` of the unit circle.
    Verdict verdict = Verdict::Indeterminate;
    /// |det Phi(l)| = |xi_{t,l}| at season l; only meaningful for p <= l.
    double phi_l_determinant = 0.0;
    bool has_phi_l_determinant = false;
};

inline constexpr double kUnitCircleBand = 0.02;

/// Per-period companion matrix of the AR part (dimension l*P).
Eigen::MatrixXd companion(const VSForm& vs);

StationarityVerdict stationarity(const VSForm& vs, double band = kUnitCircleBand);

/// Same verdict, with |det Phi(l)| filled in when p <= l.
StationarityVerdict stationarity(const PeriodicModel& model, double band = kUnitCircleBand);

/// Dense l x l fundamental matrix Phi(l) anchored at season l.
Eigen::MatrixXd phi_of_l(const PeriodicModel& model);

class WrongShape : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The PAR(2;4) stationarity expression
///   |phi_{2,2}phi_{1,3}phi_{1,4} + phi_{2,2}phi_{2,4} + phi_{2,1}phi_{1,2}phi_{1,3}
///    + phi_{2,1}phi_{2,3} + phi_{1,1}phi_{1,2}phi_{1,3}phi_{1,4} + phi_{1,1}phi_{1,2}phi_{2,4}
///    + phi_{1,1}phi_{1,4}phi_{2,3} - phi_{2,1}phi_{2,2}phi_{2,3}phi_{2,4}|.
/// Throws WrongShape unless l = 4 and p = 2 (p = 1 is accepted with phi_2 = 0).
double par24_restriction(const PeriodicModel& model);

struct CrossCheck {
    double xi_l = 0.0;          ///< xi_{t,l} from the recurrence, t at season l
    double det_phi_l = 0.0;     ///< det Phi(l) by LU
    bool values_agree = false;  ///< | |xi_l| - |det| | <= tolerance * max(1, |det|)
    bool verdicts_agree = true; ///< p = 1 only: |xi_l| < 1 matches the root verdict
    bool ok = false;
};

/// Compares |xi_{t,l}| from `greens` with |det Phi(l)|. Requires p <= l.
CrossCheck xi_cross_check(const PeriodicModel& model, double tolerance = 1e-10);

/// Point forecasts of whole periods by iterating the VS form. Requires P = 1
/// and q = 0. `last_period` holds y_{1,T}..y_{l,T}; row n-1 of the result is
/// the forecast of period T+n.
std::vector<Eigen::VectorXd> vs_forecast(const VSForm& vs, const Eigen::VectorXd& last_period,
                                         int periods);

/// Forecast-error covariance of period T+n, n = 1..periods, under the VS form
/// with diagonal innovation covariance diag(sigma2_1..sigma2_l). P = 1, q = 0.
std::vector<Eigen::MatrixXd> vs_forecast_error_covariance(const VSForm& vs,
                                                          const PeriodicModel& model, int periods);

} // namespace parma
