#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "bdris/radiation.hpp"

namespace bdris::sim {

enum class ExperimentKind { Scaling, SumRate };

/// Declarative description of one experiment run. Power and fading inputs
/// arrive in dBm / dB in the config file and are converted at the parse
/// boundary; the struct stores linear units only.
struct ScenarioConfig {
    ExperimentKind kind = ExperimentKind::Scaling;
    std::uint64_t seed = 1;
    int trials = 50;
    bool trace = false;
    int threads = 0;  // 0: hardware concurrency

    // Geometry and carrier, shared by both experiments.
    double frequency_hz = 2.4e9;
    double tx_distance_m = 100.0;
    double user_distance_m = 10.0;
    double tx_gain = 1.0;
    double user_gain = 1.0;
    double tx_elevation_rad = 0.0;
    std::vector<PatternKind> patterns{PatternKind::Idealized, PatternKind::Practical};
    std::vector<int> sectors{2, 3, 4, 5, 6};

    // Received-power study sweeps.
    int fixed_m = 32;    // antennas per sector; 0 disables this sweep
    int fixed_ml = 180;  // antennas for the whole surface; 0 disables
    int mc_draws = 10000;

    // Sum-rate study.
    int tx_antennas = 6;
    int users = 6;
    std::vector<int> ml_list{96, 120};
    int upa_y = 4;
    bool discrete = false;
    int amp_bits = 3;
    int phase_bits = 3;
    std::vector<int> resolution_list;  // optional A=B sweep; overrides amp/phase bits
    bool include_continuous = false;   // add a continuous reference series

    double tx_power_watts = 1.0;
    double noise_watts = 1e-11;     // -80 dBm
    double rician_tx_linear = 1.0;  // 0 dB
    double rician_user_linear = 1.0;

    double wavelength() const { return 299792458.0 / frequency_hz; }
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Parses `key = value` lines ('#' starts a comment) on top of `base`.
/// Unknown keys or malformed values raise ConfigError. The result is
/// validated before being returned.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = {});

/// Baked-in experiment presets: "fig6" (received power versus sectors),
/// "fig7" (continuous sum-rate versus surface size), "fig8" (discrete
/// resolutions versus continuous). Unknown names raise ConfigError.
ScenarioConfig preset(const std::string& name);

/// Throws ConfigError listing every violated constraint.
void validate(const ScenarioConfig& cfg);

/// Human-readable schema for --print-schema.
std::string config_schema();

}  // namespace bdris::sim
