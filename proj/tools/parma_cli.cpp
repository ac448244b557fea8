// parma: command-line front end for periodic ARMA analysis.
//
// Exit status: 0 success, 1 model/validation failure, 2 usage, I/O or parse error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "parma/determinant.hpp"
#include "parma/forecast.hpp"
#include "parma/greens.hpp"
#include "parma/io.hpp"
#include "parma/moments.hpp"
#include "parma/sim.hpp"
#include "parma/vsform.hpp"

namespace {

using parma::io::format_number;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string model_path;
    std::string series_path;
    std::string output_path;
    int horizon = 0;
    int max_lag = 0;
    int truncation = 0;
    int length = 0;
    int burn_in = -1;
    int replications = 1;
    std::uint64_t seed = 0;
    double z = 1.96;
    double df = 5.0;
    std::string dist = "gaussian";
    bool zero_innovations = false;
    double tolerance = 1e-10;
    double margin = 0.01;
    int bench_p = 4;
    int bench_l = 365;
    int bench_max_k = 365;
    int bench_repeats = 5;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw parma::io::ParseError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

parma::PeriodicModel load_model(const std::string& path) {
    const auto spec = parma::io::read_model_file(path);
    auto checked = parma::validate(spec);
    if (!checked.ok()) throw parma::ModelValidationError(checked.issues);
    return std::move(*checked.model);
}

std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

int run_validate(const Options& o) {
    const auto spec = parma::io::read_model_file(o.model_path);
    const auto issues = parma::lint(spec);
    Output out(o.output_path);
    auto& os = out.stream();
    if (issues.empty()) {
        const parma::PeriodicModel model(spec);
        os << "model: PARMA(" << spec.p << "," << spec.q << ";" << spec.l << ")\n";
        os << "constant_coefficients: " << (model.is_constant() ? "yes" : "no") << "\n";
        os << "status: OK\n";
        return kExitOk;
    }
    for (const auto& issue : issues) {
        os << to_string(issue.kind) << "," << issue.field << "," << issue.message << "\n";
    }
    os << "status: INVALID (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s")
       << ")\n";
    return kExitInvalid;
}

int run_greens(const Options& o) {
    const auto model = load_model(o.model_path);
    const int H = o.horizon;
    const bool with_star = model.ma_order() > 0;
    const parma::GreenBank bank(model, H, true);
    Output out(o.output_path);
    auto& os = out.stream();
    os << (with_star ? "season,lag,xi,xi_star\n" : "season,lag,xi\n");
    bool overflow = false;
    for (int s = 1; s <= model.period_length(); ++s) {
        const auto& table = bank.for_season(s);
        overflow = overflow || table.overflow_warning();
        std::vector<double> star;
        if (with_star) star = parma::xi_star(model, table, H + 1);
        for (int r = 0; r <= H; ++r) {
            std::vector<std::string> row{std::to_string(s), std::to_string(r),
                                         format_number(table.xi(r))};
            if (with_star) row.push_back(format_number(star[r]));
            os << join(row) << "\n";
        }
    }
    if (overflow) std::cerr << "warning: |xi| exceeds 1e100 at the final lag\n";
    return kExitOk;
}

int run_forecast(const Options& o) {
    const auto model = load_model(o.model_path);
    const auto series = parma::io::read_series_file(o.series_path, model.clock());
    const int p = model.ar_order();
    const int q = model.ma_order();
    if (series.points.size() < static_cast<std::size_t>(std::max({p, q, 1}))) {
        throw parma::io::ParseError("series file has fewer rows than max(p, q, 1)");
    }
    parma::ForecastOrigin origin;
    origin.time = series.points.back().time;
    const auto n = series.points.size();
    for (int m = 0; m < p; ++m) origin.observed.push_back(series.points[n - 1 - m].value);
    if (q > 0) {
        if (!series.has_eps && !o.zero_innovations) {
            throw parma::MissingInnovationTail(
                "MissingInnovationTail: MA model needs an 'eps' column or --zero-innovations");
        }
        for (int j = 0; j < q; ++j) {
            origin.innovations.push_back(series.has_eps ? series.points[n - 1 - j].eps : 0.0);
        }
    }
    const auto report = parma::predict(model, origin, o.horizon);
    Output out(o.output_path);
    auto& os = out.stream();
    os << "# Gaussian-innovation interval, z = " << format_number(o.z) << "\n";
    os << "h,time,season,point,mse,lower,upper\n";
    for (const auto& row : report.rows) {
        const auto band = parma::gaussian_interval(row, o.z);
        os << join({std::to_string(row.horizon), std::to_string(row.target_time),
                    std::to_string(row.target_season), format_number(row.point),
                    format_number(row.mse), format_number(band.lower), format_number(band.upper)})
           << "\n";
    }
    return kExitOk;
}

int run_moments(const Options& o) {
    const auto model = load_model(o.model_path);
    parma::ConvergenceOptions copts;
    copts.margin = o.margin;
    const auto diag = parma::check_convergence(model, copts);
    const auto vs = parma::stationarity(parma::build_vsform(model));
    Output out(o.output_path);
    auto& os = out.stream();
    os << "# rho_hat " << format_number(diag.rho_hat) << "\n";
    os << "# per_period_growth " << format_number(diag.per_period_growth) << "\n";
    os << "# vs_spectral_radius " << format_number(vs.spectral_radius) << "\n";
    os << "# convergence " << (diag.pass ? "PASS" : "FAIL") << "\n";
    if (!diag.pass) {
        std::cerr << "error: NotConvergent: unconditional moments do not exist for this model\n";
        return kExitInvalid;
    }
    const auto profile = parma::moment_profile(model, o.max_lag, o.truncation, copts);
    os << "# truncation " << profile.truncation << "\n";
    os << "# tail_bound " << format_number(profile.tail_bound) << "\n";
    std::vector<std::string> header{"season", "mean", "variance"};
    for (int k = 0; k <= o.max_lag; ++k) header.push_back("gamma_" + std::to_string(k));
    os << join(header) << "\n";
    for (const auto& s : profile.seasons) {
        std::vector<std::string> row{std::to_string(s.season), format_number(s.mean),
                                     format_number(s.variance)};
        for (double g : s.autocovariance) row.push_back(format_number(g));
        os << join(row) << "\n";
    }
    return kExitOk;
}

int run_stationarity(const Options& o) {
    const auto model = load_model(o.model_path);
    const auto vs = parma::build_vsform(model);
    const auto verdict = parma::stationarity(vs);
    Output out(o.output_path);
    auto& os = out.stream();
    const int l = model.period_length();
    os << "vs_order " << vs.P << "\n";
    os << "spectral_radius " << format_number(verdict.spectral_radius) << "\n";
    if (model.ar_order() <= l) {
        const auto cross = parma::xi_cross_check(model, o.tolerance);
        os << "xi_l " << format_number(cross.xi_l) << "\n";
        os << "det_phi_l " << format_number(cross.det_phi_l) << "\n";
        if (model.ar_order() == 1) {
            double product = 1.0;
            for (int s = 1; s <= l; ++s) product *= model.phi_at_season(1, s);
            os << "product " << format_number(product) << "\n";
        }
        os << "cross_check " << (cross.ok ? "AGREE" : "DISAGREE") << "\n";
    }
    if (l == 4 && model.ar_order() >= 1 && model.ar_order() <= 2) {
        os << "par24_restriction " << format_number(parma::par24_restriction(model)) << "\n";
    }
    os << "verdict " << to_string(verdict.verdict) << "\n";
    return kExitOk;
}

int run_simulate(const Options& o) {
    const auto model = load_model(o.model_path);
    parma::SimPlan plan;
    plan.length = o.length;
    plan.replications = o.replications;
    plan.seed = o.seed;
    plan.burn_in = o.burn_in >= 0 ? o.burn_in : 10 * model.period_length() * 10;
    if (o.dist == "t") {
        plan.innovations.kind = parma::InnovationKind::StudentT;
        plan.innovations.df = o.df;
    }
    plan.start_time = 1;
    const auto paths = parma::simulate_batch(model, plan);
    Output out(o.output_path);
    auto& os = out.stream();
    if (paths.size() == 1) {
        parma::write_path_csv(os, model, paths.front());
        return kExitOk;
    }
    os << "replication,time,season,y,eps\n";
    for (std::size_t r = 0; r < paths.size(); ++r) {
        std::ostringstream body;
        parma::write_path_csv(body, model, paths[r]);
        std::istringstream lines(body.str());
        std::string line;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) os << r << "," << line << "\n";
    }
    return kExitOk;
}

int run_bench(const Options& o) {
    parma::ModelSpec spec;
    spec.l = o.bench_l;
    spec.p = o.bench_p;
    spec.drift.assign(spec.l, 0.0);
    spec.sigma2.assign(spec.l, 1.0);
    parma::InnovationStream rng(o.seed);
    for (int m = 0; m < spec.p; ++m) {
        std::vector<double> row;
        for (int s = 0; s < spec.l; ++s) row.push_back((2.0 * rng.uniform() - 1.0) * 0.5 / spec.p);
        spec.ar.push_back(row);
    }
    const parma::PeriodicModel model(spec);
    const parma::Time t = spec.l;
    using clock = std::chrono::steady_clock;
    auto best_of = [&](auto&& fn) {
        double best = 1e300;
        for (int i = 0; i < o.bench_repeats; ++i) {
            const auto a = clock::now();
            fn();
            const auto b = clock::now();
            best = std::min(best, std::chrono::duration<double, std::micro>(b - a).count());
        }
        return best;
    };
    Output out(o.output_path);
    auto& os = out.stream();
    os << "k,recurrence_us,lu_us,speedup,xi,lu_det\n";
    volatile double sink = 0.0;
    for (int k = 8; k <= o.bench_max_k; k = k * 2 > o.bench_max_k && k != o.bench_max_k ? o.bench_max_k : k * 2) {
        double xi = 0.0, det = 0.0;
        const double rec_us = best_of([&] {
            xi = parma::xi_recurrence(model, t, k).xi(k);
            sink = sink + xi;
        });
        const double lu_us = best_of([&] {
            det = parma::DeterminantOracle::lu(parma::build_fundamental(model, t, k).entries);
            sink = sink + det;
        });
        os << join({std::to_string(k), format_number(rec_us), format_number(lu_us),
                    format_number(lu_us / rec_us), format_number(xi), format_number(det)})
           << "\n";
        if (k == o.bench_max_k) break;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic ARMA analysis: Green functions, forecasts, moments, stationarity"};
    app.require_subcommand(1);
    Options o;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("-m,--model", o.model_path, "Model file (JSON)")->required();
        sub->add_option("-o,--output", o.output_path, "Output file (default stdout)");
    };

    auto* validate = app.add_subcommand("validate", "Lint a model file");
    add_model(validate);

    auto* greens = app.add_subcommand("greens", "Green-function table per season");
    add_model(greens);
    greens->add_option("-H,--horizon", o.horizon, "Largest lag")->required()->check(CLI::NonNegativeNumber);

    auto* forecast = app.add_subcommand("forecast", "Multi-step forecasts with MSE");
    add_model(forecast);
    forecast->add_option("-s,--series", o.series_path, "Series file time,season,value[,eps]")->required();
    forecast->add_option("-H,--horizon", o.horizon, "Maximum horizon")->required()->check(CLI::Range(1, 1000000));
    forecast->add_option("-z", o.z, "Interval multiplier")->check(CLI::NonNegativeNumber);
    forecast->add_flag("--zero-innovations", o.zero_innovations,
                       "Treat unknown pre-origin innovations as zero");

    auto* moments = app.add_subcommand("moments", "Unconditional moments by season");
    add_model(moments);
    moments->add_option("-K,--max-lag", o.max_lag, "Largest autocovariance lag")->check(CLI::NonNegativeNumber);
    moments->add_option("-R,--truncation", o.truncation, "Series truncation (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    moments->add_option("--margin", o.margin, "Convergence margin")->check(CLI::Range(0.0, 1.0));

    auto* stationarity = app.add_subcommand("stationarity", "Vector-of-seasons stationarity verdict");
    add_model(stationarity);
    stationarity->add_option("--tolerance", o.tolerance, "Cross-check tolerance")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Simulate sample paths");
    add_model(simulate);
    simulate->add_option("-n,--length", o.length, "Retained steps per path")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--burn-in", o.burn_in, "Burn-in steps (default 100 periods)")->check(CLI::NonNegativeNumber);
    simulate->add_option("-N,--replications", o.replications, "Number of paths")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--dist", o.dist, "Innovation distribution")->check(CLI::IsMember({"gaussian", "t"}));
    simulate->add_option("--df", o.df, "Student-t degrees of freedom (> 2)");

    auto* bench = app.add_subcommand("bench", "Time the recurrence against LU determinants");
    bench->add_option("-o,--output", o.output_path, "Output file (default stdout)");
    bench->add_option("-p", o.bench_p, "AR order")->check(CLI::PositiveNumber);
    bench->add_option("-l", o.bench_l, "Period length")->check(CLI::PositiveNumber);
    bench->add_option("--max-k", o.bench_max_k, "Largest order")->check(CLI::Range(8, 512));
    bench->add_option("--repeats", o.bench_repeats, "Timing repeats")->check(CLI::PositiveNumber);
    bench->add_option("--seed", o.seed, "Coefficient seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) return run_validate(o);
        if (*greens) return run_greens(o);
        if (*forecast) return run_forecast(o);
        if (*moments) return run_moments(o);
        if (*stationarity) return run_stationarity(o);
        if (*simulate) return run_simulate(o);
        if (*bench) return run_bench(o);
    } catch (const parma::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parma::ModelValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const parma::MissingInnovationTail& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const parma::NotConvergent& e) {
        std::cerr << "error: NotConvergent: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
