#include "bdris/scaling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bdris {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const ScalingScenario& scn) {
    if (scn.tx_power <= 0.0 || scn.cells < 1 || scn.sectors < 2 || scn.tx_distance <= 0.0 ||
        scn.user_distance <= 0.0 || scn.wavelength <= 0.0 || scn.tx_gain <= 0.0 ||
        scn.user_gain <= 0.0) {
        throw std::domain_error("ScalingScenario: all parameters must be positive, L >= 2");
    }
}

/// P * M^2 * lambda^4 * G_t * G_u / (4^3 pi^4 d_t^2 d_u^2), the common factor
/// of both closed forms.
double base_power(const ScalingScenario& scn) {
    const double m2 = static_cast<double>(scn.cells) * static_cast<double>(scn.cells);
    const double numer = scn.tx_power * m2 * std::pow(scn.wavelength, 4) * scn.tx_gain *
                         scn.user_gain;
    const double denom = 64.0 * std::pow(kPi, 4) * scn.tx_distance * scn.tx_distance *
                         scn.user_distance * scn.user_distance;
    return numer / denom;
}

}  // namespace

double max_received_power(double tx_power, double zeta, int cells) {
    if (tx_power <= 0.0 || zeta <= 0.0 || cells < 1) {
        throw std::domain_error("max_received_power: inputs must be positive");
    }
    return tx_power / zeta * static_cast<double>(cells) * static_cast<double>(cells);
}

double received_power_idealized(const ScalingScenario& scn) {
    check(scn);
    const double c = 1.0 - std::cos(kPi / scn.sectors);
    return base_power(scn) / (c * c);
}

double received_power_practical(const ScalingScenario& scn, double theta_user) {
    check(scn);
    if (theta_user < 0.0 || theta_user > kPi / scn.sectors) {
        throw std::domain_error("received_power_practical: user outside sector coverage");
    }
    const double alpha = pattern_exponent(scn.sectors);
    return base_power(scn) * (alpha + 1.0) * (alpha + 1.0) *
           std::pow(std::cos(theta_user), alpha);
}

double practical_upper_bound(const ScalingScenario& scn) {
    check(scn);
    return received_power_practical(scn, kPi / (2.0 * scn.sectors));
}

MonteCarloEstimate monte_carlo_average(const ScalingScenario& scn, int trials, Rng& rng) {
    check(scn);
    if (trials < 1) throw std::domain_error("monte_carlo_average: trials must be >= 1");
    const double cone = kPi / scn.sectors;
    // Welford keeps the mean exact and the spread at zero for the constant
    // L = 2 integrand.
    double mean = 0.0;
    double m2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double p = received_power_practical(scn, rng.uniform(0.0, cone));
        const double delta = p - mean;
        mean += delta / (t + 1);
        m2 += delta * (p - mean);
    }
    MonteCarloEstimate est;
    est.trials = trials;
    est.mean = mean;
    if (trials > 1) {
        est.std_err = std::sqrt(m2 / (trials - 1) / trials);
    }
    return est;
}

}  // namespace bdris
