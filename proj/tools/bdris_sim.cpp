#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bdris/errors.hpp"
#include "bdris/sim/config.hpp"
#include "bdris/sim/experiment.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& preset_name,
                std::int64_t seed_override, int trials_override, const std::string& out_dir,
                bool trace, bool print_schema) {
    using namespace bdris::sim;
    if (print_schema) {
        std::cout << config_schema();
        return 0;
    }
    if (config_path.empty() && preset_name.empty()) {
        std::cerr << "error: need a config file or --preset (or --print-schema)\n";
        return 2;
    }

    ScenarioConfig cfg = preset_name.empty() ? ScenarioConfig{} : preset(preset_name);
    if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return 2;
        }
        cfg = parse_config(file, cfg);
    }
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (trials_override > 0) cfg.trials = trials_override;
    if (trace) cfg.trace = true;
    validate(cfg);

    if (cfg.kind == ExperimentKind::Scaling) {
        const ScalingRun run = run_scaling(cfg);
        write_outputs(run, out_dir);
        std::cout << "scaling: " << run.rows.size() << " sweep points -> " << out_dir
                  << "/summary.csv\n";
    } else {
        const SumRateRun run = run_sumrate(cfg);
        write_outputs(run, out_dir);
        std::cout << "sumrate: " << run.combos.size() << " sweep points x " << cfg.trials
                  << " trials -> " << out_dir << "/summary.csv, trials.csv"
                  << (cfg.trace ? ", trajectory.csv" : "") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-sector surface link-budget and sum-rate experiments"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    std::string config_path;
    std::string preset_name;
    std::string out_dir = "results";
    std::int64_t seed = -1;
    int trials = 0;
    bool trace = false;
    bool print_schema = false;
    run->add_option("config", config_path, "Config file (key = value lines)");
    run->add_option("--preset", preset_name, "Start from a named preset: fig6|fig7|fig8");
    run->add_option("--seed", seed, "Override the base seed");
    run->add_option("--trials", trials, "Override the trial count");
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--trace", trace, "Also emit per-iteration trajectory.csv");
    run->add_flag("--print-schema", print_schema, "Print the config schema and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        return run_command(config_path, preset_name, seed, trials, out_dir, trace, print_schema);
    } catch (const bdris::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
