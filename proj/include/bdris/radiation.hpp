#pragma once

#include <string>
#include <vector>

namespace bdris {

enum class PatternKind { Idealized, Practical };

std::string to_string(PatternKind kind);

/// Cosine-pattern exponent giving a half-power beamwidth of 2*pi/L:
/// alpha = ln(0.5) / ln(cos(pi/L)) for L >= 3. The L = 2 hemisphere pattern
/// degenerates (cos(pi/2) = 0) and is represented by alpha = 0, i.e. constant
/// gain 2 over the half space. Throws std::domain_error for L < 2.
double pattern_exponent(int sectors);

/// Per-antenna radiation pattern of an L-sector surface.
///
/// Idealized: gain 2/(1-cos(pi/L)) inside the elevation cone theta <= pi/L,
/// zero outside. Practical: gain 2*(alpha+1)*cos(theta)^alpha on the front
/// hemisphere, zero behind, with alpha = pattern_exponent(L).
class RadiationPattern {
public:
    static RadiationPattern idealized(int sectors);
    static RadiationPattern practical(int sectors);
    static RadiationPattern make(PatternKind kind, int sectors);

    PatternKind kind() const noexcept { return kind_; }
    int sectors() const noexcept { return sectors_; }
    double alpha() const noexcept { return alpha_; }

    /// Linear antenna gain at elevation theta in [0, pi].
    double gain(double theta) const;

private:
    RadiationPattern(PatternKind kind, int sectors, double alpha)
        : kind_(kind), sectors_(sectors), alpha_(alpha) {}

    PatternKind kind_;
    int sectors_;
    double alpha_;
};

/// Relative placement of the transmitter and the users around the surface.
/// Angles are elevations measured from the relevant sector boresight; empty
/// per-user angle vectors mean "draw at realization time".
struct LinkGeometry {
    double tx_distance = 0.0;                 // transmitter-surface distance [m]
    std::vector<double> user_distance;        // per-user surface-user distance [m]
    double tx_elevation = 0.0;                // transmitter elevation seen from sector 1
    std::vector<double> user_elevation;       // per-user elevation (empty: drawn)
    std::vector<double> user_azimuth;         // per-user azimuth (empty: drawn)
    double wavelength = 0.0;                  // carrier wavelength [m]
    double tx_gain = 1.0;                     // transmitter antenna gain, linear
    double user_gain = 1.0;                   // user antenna gain, linear
    std::vector<int> user_sector;             // serving sector per user, 1-based
    double tx_steer_elevation = 0.0;          // steering angle at the transmit array
    double tx_azimuth = 0.0;                  // azimuth of the transmitter from sector 1
};

/// Cascaded two-hop free-space loss between transmitter and one user through
/// the surface, including both surface antenna gains:
///   zeta = (4*pi)^4 d_t^2 d_u^2 / (lambda^4 G_t G_u G(theta_t) G(theta_u)).
/// Elevations outside the sector cone [0, pi/L] raise std::domain_error.
double cascaded_path_loss(const RadiationPattern& pattern, double tx_distance,
                          double user_distance, double tx_elevation, double user_elevation,
                          double wavelength, double tx_gain, double user_gain);

/// Path loss of user k (0-based) under `geometry`, which must carry realized
/// per-user elevations.
double path_loss(const RadiationPattern& pattern, const LinkGeometry& geometry, int user);

}  // namespace bdris
