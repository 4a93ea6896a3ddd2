#pragma once

#include "bdris/radiation.hpp"
#include "bdris/rng.hpp"

namespace bdris {

/// Single-user single-input setup for the received-power analysis. The
/// transmitter sits on the boresight of sector 1 (zero elevation); the user
/// is somewhere inside one sector's cone, with exactly that sector active at
/// unit amplitude and matched phases.
struct ScalingScenario {
    double tx_power = 1.0;       // watts
    int cells = 1;               // antennas per sector
    int sectors = 2;
    double tx_distance = 100.0;  // meters
    double user_distance = 10.0;
    double wavelength = 0.125;
    double tx_gain = 1.0;
    double user_gain = 1.0;
    PatternKind pattern = PatternKind::Idealized;
};

/// Phase-matched received power P * M^2 / zeta for an M-antenna sector.
double max_received_power(double tx_power, double zeta, int cells);

/// Closed-form matched received power under the idealized pattern; the user
/// location inside the cone does not matter.
double received_power_idealized(const ScalingScenario& scn);

/// Matched received power under the practical pattern for a user at
/// elevation theta_user (boresight transmitter).
double received_power_practical(const ScalingScenario& scn, double theta_user);

/// Jensen bound on the practical-pattern average over a user uniform in
/// elevation: the power evaluated at the mean elevation pi/(2L).
double practical_upper_bound(const ScalingScenario& scn);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    int trials = 0;
};

/// Sample mean and standard error of the practical-pattern received power
/// over user elevations drawn uniformly from [0, pi/L].
MonteCarloEstimate monte_carlo_average(const ScalingScenario& scn, int trials, Rng& rng);

}  // namespace bdris
