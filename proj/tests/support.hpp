#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bdris/fp/solver.hpp"
#include "bdris/layout.hpp"
#include "bdris/ris_config.hpp"
#include "bdris/rng.hpp"

namespace testsupport {

inline Eigen::VectorXcd random_cvector(bdris::Rng& rng, int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v;
}

inline Eigen::MatrixXcd random_cmatrix(bdris::Rng& rng, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_normal();
    }
    return m;
}

/// Random feasible continuous configuration: per cell, amplitudes from a
/// normalized positive draw, phases uniform.
inline bdris::RisConfiguration random_ris(bdris::Rng& rng, const bdris::SectorLayout& layout) {
    bdris::RisConfiguration cfg(layout.total());
    for (int m0 = 0; m0 < layout.cells(); ++m0) {
        Eigen::VectorXd amp(layout.sectors());
        for (int l0 = 0; l0 < layout.sectors(); ++l0) amp(l0) = std::abs(rng.normal()) + 1e-3;
        amp /= amp.norm();
        for (int l0 = 0; l0 < layout.sectors(); ++l0) {
            cfg.set_continuous(layout.flat(l0, m0), amp(l0) * amp(l0),
                               rng.uniform(0.0, 2.0 * 3.14159265358979));
        }
    }
    return cfg;
}

/// Unit-scale random solver instance (channel entries CN(0,1), unit noise).
inline bdris::fp::SumRateProblem random_problem(bdris::Rng& rng, int tx, int users, int sectors,
                                                int cells, double power = 10.0,
                                                double noise = 1.0) {
    bdris::SectorLayout layout(sectors, cells);
    bdris::fp::SumRateProblem p{layout, random_cmatrix(rng, cells, tx), {}, {},
                                Eigen::VectorXd::Constant(users, noise), power};
    const int per_sector = users / sectors;
    for (int k = 0; k < users; ++k) {
        p.user_channel.push_back(random_cvector(rng, cells));
        p.user_sector0.push_back(users % sectors == 0 ? k / per_sector
                                                      : k % sectors);
    }
    return p;
}

/// Sum rate recomputed from scratch through the row-channel route
/// H_k = h_k' * Phi_l * H_t, independent of the effective-vector path.
inline double brute_force_sum_rate(const bdris::fp::SumRateProblem& p,
                                   const bdris::RisConfiguration& ris,
                                   const Eigen::MatrixXcd& precoder) {
    const int K = p.users();
    double rate = 0.0;
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd phi = ris.sector_phi(p.layout, p.user_sector0[k]);
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(p.tx_antennas());
        for (int i = 0; i < p.layout.cells(); ++i) {
            row += std::conj(p.user_channel[k](i)) * phi(i) * p.tx_channel.row(i);
        }
        double signal = 0.0;
        double interference = 0.0;
        for (int q = 0; q < K; ++q) {
            const double pow2 = std::norm((row * precoder.col(q))(0, 0));
            if (q == k) {
                signal = pow2;
            } else {
                interference += pow2;
            }
        }
        rate += std::log2(1.0 + signal / (interference + p.noise_power(k)));
    }
    return rate;
}

/// Matched-filter precoder for the current surface state, scaled to the full
/// power budget with equal per-stream power.
inline Eigen::MatrixXcd matched_filter_precoder(const bdris::fp::SumRateProblem& p,
                                                const bdris::RisConfiguration& ris) {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(p.tx_antennas(), p.users());
    for (int k = 0; k < p.users(); ++k) {
        const Eigen::VectorXcd g = bdris::fp::effective_tx_channel(p, ris, k);
        if (g.norm() > 0.0) w.col(k) = std::sqrt(p.power_budget / p.users()) * g / g.norm();
    }
    return w;
}

}  // namespace testsupport
