#include "parma/vsform.hpp"

#include <Eigen/Eigenvalues>

#include <cassert>
#include <cmath>

#include "parma/determinant.hpp"
#include "parma/greens.hpp"

namespace parma {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Stacked lag-polynomial blocks for an order-`order` coefficient table,
// `lag_coeff(m, season)` returning the lag-m coefficient at a 1-based season.
template <class Coeff>
std::vector<Eigen::MatrixXd> stack(int l, int order, double below_sign, Coeff lag_coeff) {
    const int blocks = ceil_div(order, l);
    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd zero = Eigen::MatrixXd::Identity(l, l);
    for (int i = 1; i <= l; ++i) {
        for (int j = 1; j < i; ++j) {
            const int m = i - j;
            if (m <= order) zero(i - 1, j - 1) = below_sign * lag_coeff(m, i);
        }
    }
    out.push_back(std::move(zero));
    for (int M = 1; M <= blocks; ++M) {
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(l, l);
        for (int i = 1; i <= l; ++i) {
            for (int j = 1; j <= l; ++j) {
                const int m = i + l * M - j;
                if (m >= 1 && m <= order) block(i - 1, j - 1) = lag_coeff(m, i);
            }
        }
        out.push_back(std::move(block));
    }
    return out;
}

Eigen::MatrixXd phi0_inverse(const VSForm& vs) {
    // Phi_0 is unit lower triangular, hence never singular.
    assert(vs.phi.front().diagonal().isOnes());
    return vs.phi.front().triangularView<Eigen::UnitLower>().solve(
        Eigen::MatrixXd::Identity(vs.l, vs.l));
}

void require_var1(const VSForm& vs) {
    if (vs.P != 1) throw std::invalid_argument("VS forecast requires P = 1");
    if (vs.Q != 0) throw std::invalid_argument("VS forecast requires q = 0");
}

} // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Stationary: return "STATIONARY";
    case Verdict::NonStationary: return "NONSTATIONARY";
    case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "UNKNOWN";
}

VSForm build_vsform(const PeriodicModel& model) {
    VSForm vs;
    vs.l = model.period_length();
    vs.P = ceil_div(model.ar_order(), vs.l);
    vs.Q = ceil_div(model.ma_order(), vs.l);
    vs.phi = stack(vs.l, model.ar_order(), -1.0,
                   [&](int m, int s) { return model.phi_at_season(m, s); });
    vs.theta = stack(vs.l, model.ma_order(), 1.0,
                     [&](int j, int s) { return model.theta_at_season(j, s); });
    vs.drift = Eigen::Map<const Eigen::VectorXd>(model.spec().drift.data(), vs.l);
    return vs;
}

Eigen::MatrixXd companion(const VSForm& vs) {
    const int l = vs.l;
    const int P = vs.P;
    if (P == 0) return Eigen::MatrixXd::Zero(l, l);
    const Eigen::MatrixXd inv = phi0_inverse(vs);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(l * P, l * P);
    for (int M = 1; M <= P; ++M) c.block(0, (M - 1) * l, l, l) = inv * vs.phi[M];
    if (P > 1) c.block(l, 0, l * (P - 1), l * (P - 1)).setIdentity();
    return c;
}

StationarityVerdict stationarity(const VSForm& vs, double band) {
    StationarityVerdict out;
    const Eigen::MatrixXd c = companion(vs);
    const Eigen::VectorXcd eig = c.eigenvalues();
    double radius = 0.0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) radius = std::max(radius, std::abs(eig[i]));
    out.spectral_radius = radius;
    out.stationary = radius < 1.0;
    if (std::abs(radius - 1.0) < band) {
        out.verdict = Verdict::Indeterminate;
    } else {
        out.verdict = out.stationary ? Verdict::Stationary : Verdict::NonStationary;
    }
    return out;
}

StationarityVerdict stationarity(const PeriodicModel& model, double band) {
    StationarityVerdict out = stationarity(build_vsform(model), band);
    if (model.ar_order() <= model.period_length()) {
        out.phi_l_determinant = std::abs(DeterminantOracle::lu(phi_of_l(model)));
        out.has_phi_l_determinant = true;
    }
    return out;
}

Eigen::MatrixXd phi_of_l(const PeriodicModel& model) {
    const int l = model.period_length();
    return build_fundamental(model, model.clock().first_time_of(l), l).entries;
}

double par24_restriction(const PeriodicModel& model) {
    if (model.period_length() != 4 || model.ar_order() < 1 || model.ar_order() > 2) {
        throw WrongShape("PAR(2;4) restriction needs l = 4 and p <= 2");
    }
    auto a = [&](int s) { return model.phi_at_season(1, s); };
    auto b = [&](int s) { return model.ar_order() == 2 ? model.phi_at_season(2, s) : 0.0; };
    const double expr = b(2) * a(3) * a(4) + b(2) * b(4) + b(1) * a(2) * a(3) + b(1) * b(3) +
                        a(1) * a(2) * a(3) * a(4) + a(1) * a(2) * b(4) + a(1) * a(4) * b(3) -
                        b(1) * b(2) * b(3) * b(4);
    return std::abs(expr);
}

CrossCheck xi_cross_check(const PeriodicModel& model, double tolerance) {
    const int l = model.period_length();
    if (model.ar_order() > l) throw std::invalid_argument("cross-check needs p <= l");
    CrossCheck out;
    out.xi_l = xi_recurrence(model, model.clock().first_time_of(l), l).xi(l);
    out.det_phi_l = DeterminantOracle::lu(phi_of_l(model));
    const double diff = std::abs(std::abs(out.xi_l) - std::abs(out.det_phi_l));
    out.values_agree = diff <= tolerance * std::max(1.0, std::abs(out.det_phi_l));
    if (model.ar_order() == 1) {
        const auto verdict = stationarity(build_vsform(model));
        if (verdict.verdict != Verdict::Indeterminate) {
            out.verdicts_agree = (std::abs(out.xi_l) < 1.0) == verdict.stationary;
        }
    }
    out.ok = out.values_agree && out.verdicts_agree;
    return out;
}

std::vector<Eigen::VectorXd> vs_forecast(const VSForm& vs, const Eigen::VectorXd& last_period,
                                         int periods) {
    require_var1(vs);
    if (last_period.size() != vs.l) throw std::invalid_argument("last period must have l values");
    const Eigen::MatrixXd inv = phi0_inverse(vs);
    const Eigen::MatrixXd a = inv * vs.phi[1];
    const Eigen::VectorXd c = inv * vs.drift;
    std::vector<Eigen::VectorXd> out;
    Eigen::VectorXd x = last_period;
    for (int n = 0; n < periods; ++n) {
        x = a * x + c;
        out.push_back(x);
    }
    return out;
}

std::vector<Eigen::MatrixXd> vs_forecast_error_covariance(const VSForm& vs,
                                                          const PeriodicModel& model, int periods) {
    require_var1(vs);
    const Eigen::MatrixXd inv = phi0_inverse(vs);
    const Eigen::MatrixXd a = inv * vs.phi[1];
    const Eigen::VectorXd s2 = Eigen::Map<const Eigen::VectorXd>(model.spec().sigma2.data(), vs.l);
    const Eigen::MatrixXd shock = inv * s2.asDiagonal() * inv.transpose();
    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(vs.l, vs.l);
    for (int n = 0; n < periods; ++n) {
        sigma = a * sigma * a.transpose() + shock;
        out.push_back(sigma);
    }
    return out;
}

} // namespace parma
