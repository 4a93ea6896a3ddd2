#include "bdris/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bdris/arrays.hpp"
#include "bdris/errors.hpp"

namespace bdris {

namespace {
constexpr double kKappaCap = 1e12;
}

Eigen::MatrixXcd sample_rician(Rng& rng, const Eigen::MatrixXcd& los, double kappa) {
    if (kappa < 0.0) throw std::domain_error("sample_rician: kappa must be >= 0");
    kappa = std::min(kappa, kKappaCap);
    const double w_los = std::sqrt(kappa / (kappa + 1.0));
    const double w_nlos = std::sqrt(1.0 / (kappa + 1.0));
    Eigen::MatrixXcd out(los.rows(), los.cols());
    for (Eigen::Index c = 0; c < los.cols(); ++c) {
        for (Eigen::Index r = 0; r < los.rows(); ++r) {
            out(r, c) = w_los * los(r, c) + w_nlos * rng.complex_normal();
        }
    }
    return out;
}

std::vector<int> uniform_sector_assignment(int users, int sectors) {
    if (users < 1 || sectors < 1 || users % sectors != 0) {
        throw ConfigError("user count " + std::to_string(users) +
                          " is not divisible by sector count " + std::to_string(sectors));
    }
    const int per_sector = users / sectors;
    std::vector<int> assignment(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        assignment[static_cast<std::size_t>(k)] = k / per_sector + 1;
    }
    return assignment;
}

ChannelRealization realize_channels(Rng& rng, const SectorLayout& layout,
                                    const LinkGeometry& geometry,
                                    const RadiationPattern& pattern, const RicianParams& rician,
                                    int tx_antennas, int users) {
    if (pattern.sectors() != layout.sectors()) {
        throw std::invalid_argument("realize_channels: pattern/layout sector mismatch");
    }
    if (static_cast<int>(geometry.user_distance.size()) != users ||
        static_cast<int>(geometry.user_sector.size()) != users ||
        static_cast<int>(rician.kappa_user.size()) != users) {
        throw std::invalid_argument("realize_channels: per-user field size mismatch");
    }
    const bool draw_elevation = geometry.user_elevation.empty();
    const bool draw_azimuth = geometry.user_azimuth.empty();
    if (!draw_elevation && static_cast<int>(geometry.user_elevation.size()) != users) {
        throw std::invalid_argument("realize_channels: elevation count mismatch");
    }
    if (!draw_azimuth && static_cast<int>(geometry.user_azimuth.size()) != users) {
        throw std::invalid_argument("realize_channels: azimuth count mismatch");
    }

    const double cone = std::numbers::pi / layout.sectors();

    ChannelRealization out;
    out.user_elevation.resize(static_cast<std::size_t>(users));
    out.user_azimuth.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        out.user_elevation[ks] =
            draw_elevation ? rng.uniform(0.0, cone) : geometry.user_elevation[ks];
        out.user_azimuth[ks] = draw_azimuth ? rng.uniform(-cone, cone) : geometry.user_azimuth[ks];
    }

    const Eigen::VectorXcd rx_steer =
        upa_response(layout.upa_x(), layout.upa_y(), geometry.tx_elevation, geometry.tx_azimuth);
    const Eigen::VectorXcd tx_steer = ula_response(tx_antennas, geometry.tx_steer_elevation);
    out.tx_channel = sample_rician(rng, rx_steer * tx_steer.adjoint(), rician.kappa_tx);

    out.user_channel.reserve(static_cast<std::size_t>(users));
    out.path_loss.resize(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const Eigen::VectorXcd los = upa_response(layout.upa_x(), layout.upa_y(),
                                                  out.user_elevation[ks], out.user_azimuth[ks]);
        out.user_channel.push_back(sample_rician(rng, los, rician.kappa_user[ks]));
        out.path_loss[ks] =
            cascaded_path_loss(pattern, geometry.tx_distance, geometry.user_distance[ks],
                               geometry.tx_elevation, out.user_elevation[ks], geometry.wavelength,
                               geometry.tx_gain, geometry.user_gain);
    }
    return out;
}

}  // namespace bdris
