#include "bdris/sim/config.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "bdris/errors.hpp"

namespace bdris::sim {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key + ": trailing junk in '" + value + "'");
    return out;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long out = 0;
    try {
        out = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    if (pos != value.size()) throw ConfigError(key + ": trailing junk in '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key + ": empty list entry");
        out.push_back(static_cast<int>(parse_int(key, item)));
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

std::vector<PatternKind> parse_patterns(const std::string& value) {
    if (value == "idealized") return {PatternKind::Idealized};
    if (value == "practical") return {PatternKind::Practical};
    if (value == "both") return {PatternKind::Idealized, PatternKind::Practical};
    throw ConfigError("pattern: expected idealized|practical|both, got '" + value + "'");
}

void apply(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "experiment") {
        if (value == "scaling") {
            cfg.kind = ExperimentKind::Scaling;
        } else if (value == "sumrate") {
            cfg.kind = ExperimentKind::SumRate;
        } else {
            throw ConfigError("experiment: expected scaling|sumrate, got '" + value + "'");
        }
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "trials") {
        cfg.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "trace") {
        cfg.trace = parse_bool(key, value);
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "frequency_hz") {
        cfg.frequency_hz = parse_double(key, value);
    } else if (key == "tx_distance_m") {
        cfg.tx_distance_m = parse_double(key, value);
    } else if (key == "user_distance_m") {
        cfg.user_distance_m = parse_double(key, value);
    } else if (key == "tx_gain") {
        cfg.tx_gain = parse_double(key, value);
    } else if (key == "user_gain") {
        cfg.user_gain = parse_double(key, value);
    } else if (key == "tx_elevation_rad") {
        cfg.tx_elevation_rad = parse_double(key, value);
    } else if (key == "pattern") {
        cfg.patterns = parse_patterns(value);
    } else if (key == "sectors") {
        cfg.sectors = parse_int_list(key, value);
    } else if (key == "fixed_m") {
        cfg.fixed_m = static_cast<int>(parse_int(key, value));
    } else if (key == "fixed_ml") {
        cfg.fixed_ml = static_cast<int>(parse_int(key, value));
    } else if (key == "mc_draws") {
        cfg.mc_draws = static_cast<int>(parse_int(key, value));
    } else if (key == "tx_antennas") {
        cfg.tx_antennas = static_cast<int>(parse_int(key, value));
    } else if (key == "users") {
        cfg.users = static_cast<int>(parse_int(key, value));
    } else if (key == "ml_list") {
        cfg.ml_list = parse_int_list(key, value);
    } else if (key == "upa_y") {
        cfg.upa_y = static_cast<int>(parse_int(key, value));
    } else if (key == "ris_mode") {
        if (value == "continuous") {
            cfg.discrete = false;
        } else if (value == "discrete") {
            cfg.discrete = true;
        } else {
            throw ConfigError("ris_mode: expected continuous|discrete, got '" + value + "'");
        }
    } else if (key == "amp_bits") {
        cfg.amp_bits = static_cast<int>(parse_int(key, value));
    } else if (key == "phase_bits") {
        cfg.phase_bits = static_cast<int>(parse_int(key, value));
    } else if (key == "resolution_list") {
        cfg.resolution_list = parse_int_list(key, value);
    } else if (key == "include_continuous") {
        cfg.include_continuous = parse_bool(key, value);
    } else if (key == "tx_power_watts") {
        cfg.tx_power_watts = parse_double(key, value);
    } else if (key == "tx_power_dbm") {
        cfg.tx_power_watts = dbm_to_watts(parse_double(key, value));
    } else if (key == "noise_dbm") {
        cfg.noise_watts = dbm_to_watts(parse_double(key, value));
    } else if (key == "rician_tx_db") {
        cfg.rician_tx_linear = db_to_linear(parse_double(key, value));
    } else if (key == "rician_user_db") {
        cfg.rician_user_linear = db_to_linear(parse_double(key, value));
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base) {
    std::string line;
    int lineno = 0;
    std::vector<std::string> issues;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply(base, key, value);
        } catch (const ConfigError& e) {
            issues.push_back("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!issues.empty()) throw ConfigError(issues);
    validate(base);
    return base;
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base) {
    std::istringstream in(text);
    return parse_config(in, std::move(base));
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg;
    if (name == "fig6") {
        cfg.kind = ExperimentKind::Scaling;
        cfg.sectors = {2, 3, 4, 5, 6};
        cfg.fixed_m = 32;
        cfg.fixed_ml = 180;
        cfg.tx_power_watts = 1.0;
        cfg.mc_draws = 10000;
    } else if (name == "fig7") {
        cfg.kind = ExperimentKind::SumRate;
        cfg.sectors = {2, 3, 6};
        cfg.ml_list = {96, 120};
        cfg.tx_antennas = 6;
        cfg.users = 6;
        cfg.upa_y = 4;
        cfg.tx_power_watts = dbm_to_watts(10.0);
        cfg.noise_watts = dbm_to_watts(-80.0);
        cfg.rician_tx_linear = 1.0;
        cfg.rician_user_linear = 1.0;
        cfg.trials = 50;
    } else if (name == "fig8") {
        cfg = preset("fig7");
        cfg.sectors = {3};
        cfg.ml_list = {96};
        cfg.discrete = true;
        cfg.resolution_list = {1, 2, 3};
        cfg.include_continuous = true;
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig6|fig7|fig8)");
    }
    validate(cfg);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.trials < 1) issues.push_back("trials must be >= 1");
    if (cfg.threads < 0) issues.push_back("threads must be >= 0");
    if (cfg.frequency_hz <= 0.0) issues.push_back("frequency_hz must be > 0");
    if (cfg.tx_distance_m <= 0.0 || cfg.user_distance_m <= 0.0) {
        issues.push_back("distances must be > 0");
    }
    if (cfg.tx_gain <= 0.0 || cfg.user_gain <= 0.0) issues.push_back("gains must be > 0");
    if (cfg.tx_power_watts <= 0.0) issues.push_back("transmit power must be > 0");
    if (cfg.sectors.empty()) issues.push_back("sectors list must not be empty");
    for (int L : cfg.sectors) {
        if (L < 2) issues.push_back("sector count " + std::to_string(L) + " must be >= 2");
    }
    if (cfg.kind == ExperimentKind::Scaling) {
        if (cfg.fixed_m <= 0 && cfg.fixed_ml <= 0) {
            issues.push_back("scaling: need fixed_m > 0 or fixed_ml > 0");
        }
        if (cfg.mc_draws < 1) issues.push_back("mc_draws must be >= 1");
        if (cfg.fixed_ml > 0) {
            for (int L : cfg.sectors) {
                if (cfg.fixed_ml % L != 0) {
                    issues.push_back("fixed_ml = " + std::to_string(cfg.fixed_ml) +
                                     " is not divisible by sectors = " + std::to_string(L));
                }
            }
        }
    } else {
        if (cfg.tx_antennas < 1) issues.push_back("tx_antennas must be >= 1");
        if (cfg.users < 1) issues.push_back("users must be >= 1");
        if (cfg.upa_y < 1) issues.push_back("upa_y must be >= 1");
        if (cfg.noise_watts <= 0.0) issues.push_back("noise power must be > 0");
        if (cfg.rician_tx_linear < 0.0 || cfg.rician_user_linear < 0.0) {
            issues.push_back("Rician factors must be >= 0");
        }
        if (cfg.ml_list.empty()) issues.push_back("ml_list must not be empty");
        for (int L : cfg.sectors) {
            if (cfg.users % L != 0) {
                issues.push_back("users = " + std::to_string(cfg.users) +
                                 " not divisible by sectors = " + std::to_string(L));
            }
            for (int ml : cfg.ml_list) {
                if (ml % L != 0) {
                    issues.push_back("ml = " + std::to_string(ml) +
                                     " not divisible by sectors = " + std::to_string(L));
                } else if ((ml / L) % cfg.upa_y != 0) {
                    issues.push_back("per-sector antennas " + std::to_string(ml / L) +
                                     " (ml = " + std::to_string(ml) + ", sectors = " +
                                     std::to_string(L) + ") not divisible by upa_y = " +
                                     std::to_string(cfg.upa_y));
                }
            }
        }
        if (cfg.discrete) {
            if (cfg.resolution_list.empty() && (cfg.amp_bits < 1 || cfg.phase_bits < 1)) {
                issues.push_back("discrete mode needs amp_bits/phase_bits >= 1");
            }
            for (int r : cfg.resolution_list) {
                if (r < 1) issues.push_back("resolution_list entries must be >= 1");
            }
        }
    }
    if (!issues.empty()) throw ConfigError(issues);
}

std::string config_schema() {
    return R"(# Experiment configuration: one `key = value` per line, '#' comments.
#
# common
experiment = scaling | sumrate
seed = 1                  # base seed; trial t derives seed + t
trials = 50               # sumrate channel realizations per sweep point
trace = false             # sumrate: also emit trajectory.csv
threads = 0               # worker threads (0 = hardware); output is thread-count invariant
frequency_hz = 2.4e9
tx_distance_m = 100
user_distance_m = 10
tx_gain = 1               # linear
user_gain = 1
tx_elevation_rad = 0      # transmitter elevation from sector-1 boresight
pattern = both            # idealized | practical | both
sectors = 2,3,4,5,6       # sector counts swept
#
# scaling (received power versus sectors)
fixed_m = 32              # per-sector antenna sweep (0 disables)
fixed_ml = 180            # whole-surface antenna sweep (0 disables)
tx_power_watts = 1.0      # or tx_power_dbm
mc_draws = 10000          # user-elevation draws for the practical average
#
# sumrate (multiuser downlink)
tx_antennas = 6
users = 6                 # must divide by every swept sector count
ml_list = 96,120          # whole-surface antenna counts
upa_y = 4                 # per-sector array rows; ml/sectors must divide by it
tx_power_dbm = 10
noise_dbm = -80
rician_tx_db = 0
rician_user_db = 0
ris_mode = continuous     # continuous | discrete
amp_bits = 3              # discrete amplitude-square resolution
phase_bits = 3            # discrete phase resolution
# resolution_list = 1,2,3 # optional sweep of equal amp/phase bits
# include_continuous = true  # add a continuous reference series
#
# outputs: summary.csv always; trials.csv for sumrate; trajectory.csv with trace.
# Every file starts with a `# bdris-csv 1 <name>` schema line. Doubles are
# printed with 12 significant digits; identical config and seed give
# byte-identical files.
)";
}

}  // namespace bdris::sim
