#pragma once

#include <filesystem>
#include <vector>

#include "bdris/radiation.hpp"
#include "bdris/sim/config.hpp"
#include "bdris/sim/table.hpp"

namespace bdris::sim {

struct ScalingRow {
    std::string sweep;  // "fixed_m" or "fixed_ml"
    int sectors = 0;
    int m_per_sector = 0;
    PatternKind pattern = PatternKind::Idealized;
    double mean_power = 0.0;  // watts; deterministic value for the idealized pattern
    double std_err = 0.0;
    double upper_bound = 0.0;
};

struct ScalingRun {
    std::vector<ScalingRow> rows;
    Table summary;
};

/// Received-power sweeps over the configured sector counts, for a fixed
/// per-sector size and/or a fixed whole-surface size. Idealized rows are
/// closed-form (zero standard error, bound equal to the value); practical
/// rows average over seeded user-elevation draws with the closed-form bound
/// alongside. Deterministic for a given config and seed.
ScalingRun run_scaling(const ScenarioConfig& cfg);

struct SumRateCombo {
    int ml = 0;
    int sectors = 0;
    PatternKind pattern = PatternKind::Idealized;
    bool discrete = false;
    int amp_bits = 0;  // zero for continuous series
    int phase_bits = 0;
    std::vector<double> rates;  // per trial, trial-index order
    std::vector<int> iterations;
    std::vector<bool> converged;
    double mean_rate = 0.0;
    double std_err = 0.0;
    double mean_iterations = 0.0;
};

struct SumRateRun {
    std::vector<SumRateCombo> combos;
    Table summary;
    Table trials;
    Table trajectory;  // filled only when cfg.trace
};

/// Sum-rate sweep over (surface size, sector count, pattern, resolution).
/// Trial t draws its channel from seed + t, identically across combos so
/// series are seed-paired. Trials run on a bounded worker pool and results
/// are merged in trial order; output does not depend on the thread count.
/// Solver non-convergence is recorded per trial, never fatal.
SumRateRun run_sumrate(const ScenarioConfig& cfg);

/// Writes summary.csv (and trials.csv / trajectory.csv for sum-rate runs)
/// under `out_dir`, creating the directory if needed.
void write_outputs(const ScalingRun& run, const std::filesystem::path& out_dir);
void write_outputs(const SumRateRun& run, const std::filesystem::path& out_dir);

}  // namespace bdris::sim
