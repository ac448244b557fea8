#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "parma/forecast.hpp"
#include "parma/model.hpp"

namespace parma {

/// SplitMix64 finalizer applied to `seed + k * golden gamma`; equals the k-th
/// output of a SplitMix64 generator started at `seed`.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t k) noexcept;

/// Per-replication random stream. Replication r of a plan with seed S draws
/// from std::mt19937_64 seeded with splitmix64(S, r + 1). Normal variates use
/// the Marsaglia polar method on 53-bit uniforms, so streams are identical on
/// every standard library.
class InnovationStream {
public:
    explicit InnovationStream(std::uint64_t stream_seed) : engine_(stream_seed) {}

    static InnovationStream for_replication(std::uint64_t seed, std::uint64_t replication) {
        return InnovationStream(splitmix64(seed, replication + 1));
    }

    /// Uniform on (0, 1).
    double uniform();
    double normal();
    /// Gamma(shape, 1), Marsaglia-Tsang.
    double gamma(double shape);
    /// Student-t scaled to unit variance; df > 2.
    double student_t_unit(double df);
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class InnovationKind { Gaussian, StudentT, Custom };

/// Distribution of standardized innovations; eps_t = sqrt(sigma2(t)) * z_t.
/// Custom draws z_t uniformly with replacement from `samples`, which are
/// expected to be centred with unit variance.
struct InnovationSpec {
    InnovationKind kind = InnovationKind::Gaussian;
    double df = 5.0;
    std::vector<double> samples;
};

struct SimPlan {
    int burn_in = 0;
    int length = 0;
    int replications = 1;
    std::uint64_t seed = 0;
    InnovationSpec innovations;
    /// Time of the first retained value; its season is the model season.
    Time start_time = 1;
    /// Per-time variance override for retained steps; empty means the model schedule.
    std::vector<double> sigma2_override;
};

/// A simulated stretch y_{start}, ..., with the innovations that drove it.
/// presample_y / presample_eps hold the p values and q innovations just before
/// start_time (oldest first), so every value can be replayed.
struct SamplePath {
    Time start_time = 1;
    int start_season = 1;
    std::vector<double> y;
    std::vector<double> eps;
    std::vector<double> presample_y;
    std::vector<double> presample_eps;
};

/// Throws std::invalid_argument for an unusable plan, including a burn-in
/// shorter than 10 l for a model that passes the convergence diagnostic.
void check_plan(const PeriodicModel& model, const SimPlan& plan);

/// Replication `replication` of the plan. Burn-in starts from zeros. Checks the
/// plan's shape but not the burn-in rule; simulate_batch checks both.
SamplePath simulate(const PeriodicModel& model, const SimPlan& plan, int replication = 0);

/// All replications, in order.
std::vector<SamplePath> simulate_batch(const PeriodicModel& model, const SimPlan& plan);

/// Recomputes y at path index i (i >= 0) from stored innovations and predecessors.
double replay(const PeriodicModel& model, const SamplePath& path, std::size_t i);

/// Writes "time,season,y,eps" rows.
void write_path_csv(std::ostream& os, const PeriodicModel& model, const SamplePath& path);

struct McRow {
    int horizon = 0;
    double bias = 0.0;
    double bias_z = 0.0;
    double empirical_mse = 0.0;
    double theoretical_mse = 0.0;
    double mse_se = 0.0;
    double mse_z = 0.0;
    bool pass = false;  ///< |mse_z| <= z_threshold
};

struct McOptions {
    int replications = 100000;
    std::uint64_t seed = 0;
    double z_threshold = 3.0;
    InnovationSpec innovations;
};

/// Simulates N futures from a fixed origin and compares the empirical forecast
/// errors with the predictor's theoretical MSE, horizon by horizon.
std::vector<McRow> mc_forecast_experiment(const PeriodicModel& model, const ForecastOrigin& origin,
                                          int max_horizon, const McOptions& options);

} // namespace parma
