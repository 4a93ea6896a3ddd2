#include "bdris/sim/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>

#include "bdris/channel.hpp"
#include "bdris/fp/solver.hpp"
#include "bdris/rng.hpp"
#include "bdris/scaling.hpp"

namespace bdris::sim {

namespace {

/// Runs fn(0..count-1) on up to `threads` workers. Work items must be
/// independent; callers index into pre-sized result slots, so the outcome is
/// identical for any worker count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct MeanStdErr {
    double mean = 0.0;
    double std_err = 0.0;
};

MeanStdErr mean_std_err(const std::vector<double>& xs) {
    MeanStdErr out;
    const auto n = static_cast<double>(xs.size());
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.std_err = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

ScalingScenario make_scenario(const ScenarioConfig& cfg, int sectors, int cells,
                              PatternKind pattern) {
    ScalingScenario scn;
    scn.tx_power = cfg.tx_power_watts;
    scn.cells = cells;
    scn.sectors = sectors;
    scn.tx_distance = cfg.tx_distance_m;
    scn.user_distance = cfg.user_distance_m;
    scn.wavelength = cfg.wavelength();
    scn.tx_gain = cfg.tx_gain;
    scn.user_gain = cfg.user_gain;
    scn.pattern = pattern;
    return scn;
}

}  // namespace

ScalingRun run_scaling(const ScenarioConfig& cfg) {
    validate(cfg);
    ScalingRun run;
    run.summary.name = "scaling-summary";
    run.summary.columns = {"sweep",        "sectors", "m_per_sector", "pattern",
                           "mean_power_w", "std_err_w", "upper_bound_w"};

    struct SweepSpec {
        std::string name;
        bool fixed_total;
        int size;
    };
    std::vector<SweepSpec> sweeps;
    if (cfg.fixed_m > 0) sweeps.push_back({"fixed_m", false, cfg.fixed_m});
    if (cfg.fixed_ml > 0) sweeps.push_back({"fixed_ml", true, cfg.fixed_ml});

    int row_index = 0;
    for (const auto& sweep : sweeps) {
        for (int sectors : cfg.sectors) {
            const int cells = sweep.fixed_total ? sweep.size / sectors : sweep.size;
            for (PatternKind pattern : cfg.patterns) {
                const ScalingScenario scn = make_scenario(cfg, sectors, cells, pattern);
                ScalingRow row;
                row.sweep = sweep.name;
                row.sectors = sectors;
                row.m_per_sector = cells;
                row.pattern = pattern;
                if (pattern == PatternKind::Idealized) {
                    // Location-independent: the matched power is exact.
                    row.mean_power = received_power_idealized(scn);
                    row.std_err = 0.0;
                    row.upper_bound = row.mean_power;
                } else {
                    Rng rng(cfg.seed + static_cast<std::uint64_t>(row_index));
                    const MonteCarloEstimate est = monte_carlo_average(scn, cfg.mc_draws, rng);
                    row.mean_power = est.mean;
                    row.std_err = est.std_err;
                    row.upper_bound = practical_upper_bound(scn);
                }
                run.rows.push_back(row);
                run.summary.add_row({row.sweep, static_cast<std::int64_t>(row.sectors),
                                     static_cast<std::int64_t>(row.m_per_sector),
                                     to_string(row.pattern), row.mean_power, row.std_err,
                                     row.upper_bound});
                ++row_index;
            }
        }
    }
    return run;
}

namespace {

struct TrialOutcome {
    double rate = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<fp::IterationTrace> trajectory;
};

TrialOutcome run_trial(const ScenarioConfig& cfg, int ml, int sectors, PatternKind pattern,
                       bool discrete, int amp_bits, int phase_bits, std::uint64_t seed) {
    const int cells = ml / sectors;
    const SectorLayout layout(sectors, cells, cells / cfg.upa_y, cfg.upa_y);
    const RadiationPattern rad = RadiationPattern::make(pattern, sectors);

    LinkGeometry geometry;
    geometry.tx_distance = cfg.tx_distance_m;
    geometry.user_distance.assign(static_cast<std::size_t>(cfg.users), cfg.user_distance_m);
    geometry.tx_elevation = cfg.tx_elevation_rad;
    geometry.wavelength = cfg.wavelength();
    geometry.tx_gain = cfg.tx_gain;
    geometry.user_gain = cfg.user_gain;
    geometry.user_sector = uniform_sector_assignment(cfg.users, sectors);

    RicianParams rician;
    rician.kappa_tx = cfg.rician_tx_linear;
    rician.kappa_user.assign(static_cast<std::size_t>(cfg.users), cfg.rician_user_linear);

    Rng rng(seed);
    const ChannelRealization channels =
        realize_channels(rng, layout, geometry, rad, rician, cfg.tx_antennas, cfg.users);

    const Eigen::VectorXd noise =
        Eigen::VectorXd::Constant(cfg.users, cfg.noise_watts);
    const fp::SumRateProblem problem =
        fp::make_problem(layout, channels, geometry.user_sector, noise, cfg.tx_power_watts);

    fp::SolveOptions opts;
    if (discrete) {
        opts.mode = fp::RisMode::Discrete;
        opts.codebook = Codebook(amp_bits, phase_bits);
    }
    const fp::SolveResult result = fp::solve(problem, opts);

    TrialOutcome out;
    out.rate = result.report.final_sum_rate;
    out.iterations = result.report.iterations;
    out.converged = result.report.converged;
    if (cfg.trace) out.trajectory = result.report.trajectory;
    return out;
}

}  // namespace

SumRateRun run_sumrate(const ScenarioConfig& cfg) {
    validate(cfg);

    struct Series {
        bool discrete;
        int amp_bits;
        int phase_bits;
    };
    std::vector<Series> series;
    if (!cfg.discrete) {
        series.push_back({false, 0, 0});
    } else {
        if (cfg.include_continuous) series.push_back({false, 0, 0});
        if (cfg.resolution_list.empty()) {
            series.push_back({true, cfg.amp_bits, cfg.phase_bits});
        } else {
            for (int r : cfg.resolution_list) series.push_back({true, r, r});
        }
    }

    SumRateRun run;
    for (int ml : cfg.ml_list) {
        for (int sectors : cfg.sectors) {
            for (PatternKind pattern : cfg.patterns) {
                for (const Series& s : series) {
                    SumRateCombo combo;
                    combo.ml = ml;
                    combo.sectors = sectors;
                    combo.pattern = pattern;
                    combo.discrete = s.discrete;
                    combo.amp_bits = s.amp_bits;
                    combo.phase_bits = s.phase_bits;
                    combo.rates.resize(static_cast<std::size_t>(cfg.trials));
                    combo.iterations.resize(static_cast<std::size_t>(cfg.trials));
                    combo.converged.resize(static_cast<std::size_t>(cfg.trials));
                    run.combos.push_back(std::move(combo));
                }
            }
        }
    }

    const int trials = cfg.trials;
    const auto combo_count = static_cast<int>(run.combos.size());
    std::vector<std::vector<fp::IterationTrace>> traces;
    if (cfg.trace) traces.resize(static_cast<std::size_t>(combo_count * trials));

    parallel_for(combo_count * trials, cfg.threads, [&](int job) {
        const int c = job / trials;
        const int t = job % trials;
        SumRateCombo& combo = run.combos[static_cast<std::size_t>(c)];
        const TrialOutcome outcome =
            run_trial(cfg, combo.ml, combo.sectors, combo.pattern, combo.discrete,
                      combo.amp_bits, combo.phase_bits, cfg.seed + static_cast<std::uint64_t>(t));
        combo.rates[static_cast<std::size_t>(t)] = outcome.rate;
        combo.iterations[static_cast<std::size_t>(t)] = outcome.iterations;
        combo.converged[static_cast<std::size_t>(t)] = outcome.converged;
        if (cfg.trace) traces[static_cast<std::size_t>(job)] = outcome.trajectory;
    });

    run.summary.name = "sumrate-summary";
    run.summary.columns = {"ml",        "sectors",    "pattern",       "mode",
                           "amp_bits",  "phase_bits", "trials",        "mean_sum_rate",
                           "std_err",   "mean_iterations"};
    run.trials.name = "sumrate-trials";
    run.trials.columns = {"ml",       "sectors", "pattern",  "mode",       "amp_bits",
                          "phase_bits", "trial",  "seed",     "sum_rate",   "iterations",
                          "converged"};
    run.trajectory.name = "sumrate-trajectory";
    run.trajectory.columns = {"ml",    "sectors",   "pattern",   "mode",
                              "amp_bits", "phase_bits", "trial", "iteration",
                              "surrogate_aux", "surrogate_precoder", "surrogate_ris",
                              "sum_rate"};

    for (int c = 0; c < combo_count; ++c) {
        SumRateCombo& combo = run.combos[static_cast<std::size_t>(c)];
        const MeanStdErr stats = mean_std_err(combo.rates);
        combo.mean_rate = stats.mean;
        combo.std_err = stats.std_err;
        double iter_sum = 0.0;
        for (int it : combo.iterations) iter_sum += it;
        combo.mean_iterations = iter_sum / trials;

        const std::string mode = combo.discrete ? "discrete" : "continuous";
        run.summary.add_row({static_cast<std::int64_t>(combo.ml),
                             static_cast<std::int64_t>(combo.sectors), to_string(combo.pattern),
                             mode, static_cast<std::int64_t>(combo.amp_bits),
                             static_cast<std::int64_t>(combo.phase_bits),
                             static_cast<std::int64_t>(trials), combo.mean_rate, combo.std_err,
                             combo.mean_iterations});
        for (int t = 0; t < trials; ++t) {
            const auto ts = static_cast<std::size_t>(t);
            run.trials.add_row(
                {static_cast<std::int64_t>(combo.ml), static_cast<std::int64_t>(combo.sectors),
                 to_string(combo.pattern), mode, static_cast<std::int64_t>(combo.amp_bits),
                 static_cast<std::int64_t>(combo.phase_bits), static_cast<std::int64_t>(t),
                 static_cast<std::int64_t>(cfg.seed + static_cast<std::uint64_t>(t)),
                 combo.rates[ts], static_cast<std::int64_t>(combo.iterations[ts]),
                 static_cast<std::int64_t>(combo.converged[ts] ? 1 : 0)});
            if (cfg.trace) {
                const auto& traj = traces[static_cast<std::size_t>(c * trials + t)];
                for (std::size_t it = 0; it < traj.size(); ++it) {
                    run.trajectory.add_row(
                        {static_cast<std::int64_t>(combo.ml),
                         static_cast<std::int64_t>(combo.sectors), to_string(combo.pattern),
                         mode, static_cast<std::int64_t>(combo.amp_bits),
                         static_cast<std::int64_t>(combo.phase_bits),
                         static_cast<std::int64_t>(t), static_cast<std::int64_t>(it + 1),
                         traj[it].surrogate_aux, traj[it].surrogate_precoder,
                         traj[it].surrogate_ris, traj[it].sum_rate});
                }
            }
        }
    }
    return run;
}

void write_outputs(const ScalingRun& run, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    emit_csv(run.summary, out_dir / "summary.csv");
}

void write_outputs(const SumRateRun& run, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    emit_csv(run.summary, out_dir / "summary.csv");
    emit_csv(run.trials, out_dir / "trials.csv");
    if (!run.trajectory.empty()) emit_csv(run.trajectory, out_dir / "trajectory.csv");
}

}  // namespace bdris::sim
