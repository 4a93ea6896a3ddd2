#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bdris/layout.hpp"
#include "bdris/radiation.hpp"
#include "bdris/rng.hpp"

namespace bdris {

/// Rician factors (linear) for the two hops. kappa = 0 is pure scattering,
/// large kappa approaches the deterministic line-of-sight component.
struct RicianParams {
    double kappa_tx = 0.0;                 // transmitter-surface hop
    std::vector<double> kappa_user;        // per-user surface-user hop
};

/// One draw of the end-to-end channel state. Only the serving-sector block of
/// each user link is materialized; antennas of other sectors never see that
/// user and their blocks are identically zero.
struct ChannelRealization {
    Eigen::MatrixXcd tx_channel;                 // M x N small-scale, transmitter -> sector 1
    std::vector<Eigen::VectorXcd> user_channel;  // M-vector per user, serving sector -> user
    std::vector<double> path_loss;               // cascaded loss per user (linear)
    std::vector<double> user_elevation;          // realized elevations
    std::vector<double> user_azimuth;            // realized azimuths
};

/// Rician mixture sqrt(k/(k+1))*los + sqrt(1/(k+1))*scatter with i.i.d. unit
/// variance circularly symmetric Gaussian scatter entries. Deterministic for
/// a given generator state; kappa is capped at 1e12.
Eigen::MatrixXcd sample_rician(Rng& rng, const Eigen::MatrixXcd& los, double kappa);

/// Draws a full channel state: the transmitter-side matrix with its planar /
/// linear array line-of-sight outer product, every user vector, and the
/// per-user cascaded path loss. User elevations (azimuths) missing from the
/// geometry are drawn uniformly over the sector cone [0, pi/L] (the sector
/// azimuth span). The draw order is fixed: per-user angles first, then the
/// transmitter-side scatter matrix, then user scatter vectors in user order,
/// so realizations with equal seeds are identical across pattern choices.
ChannelRealization realize_channels(Rng& rng, const SectorLayout& layout,
                                    const LinkGeometry& geometry,
                                    const RadiationPattern& pattern, const RicianParams& rician,
                                    int tx_antennas, int users);

/// Serving sector (1-based) per user for the uniform block assignment: the
/// first K/L users to sector 1, the next K/L to sector 2, and so on. Throws
/// ConfigError when K is not divisible by L.
std::vector<int> uniform_sector_assignment(int users, int sectors);

}  // namespace bdris
