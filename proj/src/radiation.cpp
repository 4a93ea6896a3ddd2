#include "bdris/radiation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bdris {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(PatternKind kind) {
    return kind == PatternKind::Idealized ? "idealized" : "practical";
}

double pattern_exponent(int sectors) {
    if (sectors < 2) {
        throw std::domain_error("pattern_exponent: need at least 2 sectors");
    }
    if (sectors == 2) return 0.0;
    return std::log(0.5) / std::log(std::cos(kPi / sectors));
}

RadiationPattern RadiationPattern::idealized(int sectors) {
    if (sectors < 2) {
        throw std::domain_error("RadiationPattern: need at least 2 sectors");
    }
    return {PatternKind::Idealized, sectors, 0.0};
}

RadiationPattern RadiationPattern::practical(int sectors) {
    return {PatternKind::Practical, sectors, pattern_exponent(sectors)};
}

RadiationPattern RadiationPattern::make(PatternKind kind, int sectors) {
    return kind == PatternKind::Idealized ? idealized(sectors) : practical(sectors);
}

double RadiationPattern::gain(double theta) const {
    if (theta < 0.0 || theta > kPi) {
        throw std::domain_error("gain: elevation outside [0, pi]");
    }
    if (kind_ == PatternKind::Idealized) {
        if (theta > kPi / sectors_) return 0.0;
        return 2.0 / (1.0 - std::cos(kPi / sectors_));
    }
    if (theta > kPi / 2.0) return 0.0;
    return 2.0 * (alpha_ + 1.0) * std::pow(std::cos(theta), alpha_);
}

double cascaded_path_loss(const RadiationPattern& pattern, double tx_distance,
                          double user_distance, double tx_elevation, double user_elevation,
                          double wavelength, double tx_gain, double user_gain) {
    if (tx_distance <= 0.0 || user_distance <= 0.0 || wavelength <= 0.0 || tx_gain <= 0.0 ||
        user_gain <= 0.0) {
        throw std::domain_error("cascaded_path_loss: distances, wavelength and gains must be > 0");
    }
    const double cone = kPi / pattern.sectors();
    if (tx_elevation < 0.0 || tx_elevation > cone) {
        throw std::domain_error("cascaded_path_loss: transmitter outside sector coverage");
    }
    if (user_elevation < 0.0 || user_elevation > cone) {
        throw std::domain_error("cascaded_path_loss: user outside sector coverage");
    }
    const double four_pi = 4.0 * kPi;
    const double numer = four_pi * four_pi * four_pi * four_pi *
                         (tx_distance * tx_distance) * (user_distance * user_distance);
    const double denom = std::pow(wavelength, 4) * tx_gain * user_gain *
                         pattern.gain(tx_elevation) * pattern.gain(user_elevation);
    return numer / denom;
}

double path_loss(const RadiationPattern& pattern, const LinkGeometry& geometry, int user) {
    const auto k = static_cast<std::size_t>(user);
    if (k >= geometry.user_distance.size() || k >= geometry.user_elevation.size()) {
        throw std::domain_error("path_loss: user index outside geometry");
    }
    return cascaded_path_loss(pattern, geometry.tx_distance, geometry.user_distance[k],
                              geometry.tx_elevation, geometry.user_elevation[k],
                              geometry.wavelength, geometry.tx_gain, geometry.user_gain);
}

}  // namespace bdris
