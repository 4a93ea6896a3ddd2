#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bdris/channel.hpp"
#include "bdris/codebook.hpp"
#include "bdris/layout.hpp"
#include "bdris/ris_config.hpp"

namespace bdris::fp {

/// Downlink sum-rate instance: one multi-antenna transmitter behind sector 1,
/// single-antenna users spread over the sectors. User vectors are pre-scaled
/// by sqrt(1/zeta_k) so the optimizer works on effective channels directly.
struct SumRateProblem {
    SectorLayout layout;
    Eigen::MatrixXcd tx_channel;                 // M x N
    std::vector<Eigen::VectorXcd> user_channel;  // scaled M-vector per user
    std::vector<int> user_sector0;               // serving sector per user, 0-based
    Eigen::VectorXd noise_power;                 // sigma_k^2 per user
    double power_budget = 1.0;                   // transmit power cap

    int tx_antennas() const { return static_cast<int>(tx_channel.cols()); }
    int users() const { return static_cast<int>(user_channel.size()); }
};

/// Bundles a channel draw into a solver instance (applies the path-loss
/// scaling to the user vectors).
SumRateProblem make_problem(const SectorLayout& layout, const ChannelRealization& channels,
                            const std::vector<int>& user_sector_1based,
                            const Eigen::VectorXd& noise_power, double power_budget);

/// Per-pair effective vectors v(k,p): user k's channel through the surface as
/// seen by the stream of user p. v(k,p)' * phi_{l(k)} is the effective scalar
/// gain from stream p to user k.
class EffectiveVectors {
public:
    EffectiveVectors(const SumRateProblem& problem, const Eigen::MatrixXcd& precoder);

    const Eigen::VectorXcd& at(int k, int p) const {
        return v_[static_cast<std::size_t>(k * users_ + p)];
    }
    int users() const noexcept { return users_; }

private:
    int users_;
    std::vector<Eigen::VectorXcd> v_;
};

/// Effective scalar matrix S with S(k, p) = v(k,p)' * phi_{l(k)}.
Eigen::MatrixXcd effective_scalars(const SumRateProblem& problem, const EffectiveVectors& eff,
                                   const RisConfiguration& ris);

Eigen::VectorXd sinr_values(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& noise_power);

double sum_rate_from_scalars(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& noise_power);

/// Achieved sum rate (bits/s/Hz) of a configuration/precoder pair.
double sum_rate(const SumRateProblem& problem, const RisConfiguration& ris,
                const Eigen::MatrixXcd& precoder);

/// Rate auxiliaries: iota_k is set to the current SINR, the stationary point
/// of the concave rate surrogate.
Eigen::VectorXd update_rate_aux(const Eigen::MatrixXcd& scalars,
                                const Eigen::VectorXd& noise_power);

/// Quadratic-transform auxiliaries: tau_k = sqrt(1+iota_k) * S(k,k) /
/// (sum_p |S(k,p)|^2 + sigma_k^2).
Eigen::VectorXcd update_quad_aux(const Eigen::VectorXd& rate_aux,
                                 const Eigen::MatrixXcd& scalars,
                                 const Eigen::VectorXd& noise_power);

/// Block surrogate in bits: (1/ln 2) * sum_k [ ln(1+iota_k) - iota_k +
/// 2*sqrt(1+iota_k)*Re{conj(tau_k) S(k,k)} - |tau_k|^2 (sum_p |S(k,p)|^2 +
/// sigma_k^2) ]. Jointly maximizing (iota, tau) recovers the sum rate, so the
/// value is directly comparable to sum_rate.
double surrogate_bits(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& rate_aux,
                      const Eigen::VectorXcd& quad_aux, const Eigen::VectorXd& noise_power);

/// Effective row channel of user k for the precoder block, as a column:
/// g_k = (h_k' * Phi_{l(k)} * H_t)'.
Eigen::VectorXcd effective_tx_channel(const SumRateProblem& problem, const RisConfiguration& ris,
                                      int user);

/// Power-constrained surrogate maximizer over the precoder. The multiplier is
/// zero when the unconstrained solution fits the budget; otherwise bisection
/// drives ||W||_F^2 to the budget. All-zero auxiliaries yield a zero precoder.
Eigen::MatrixXcd update_precoder(const SumRateProblem& problem, const RisConfiguration& ris,
                                 const Eigen::VectorXd& rate_aux,
                                 const Eigen::VectorXcd& quad_aux);

/// Per-sector aggregates of the surface subproblem
///   maximize sum_l 2*Re{v_tilde_l' phi_l} - phi_l' V_l phi_l.
struct SectorAggregates {
    std::vector<Eigen::VectorXcd> v_tilde;  // M-vector per sector
    std::vector<Eigen::MatrixXcd> quad;     // Hermitian PSD M x M per sector
};

SectorAggregates sector_aggregates(const SumRateProblem& problem, const EffectiveVectors& eff,
                                   const Eigen::VectorXd& rate_aux,
                                   const Eigen::VectorXcd& quad_aux);

/// Value of the surface subproblem objective at the given configuration.
double ris_objective(const SumRateProblem& problem, const SectorAggregates& agg,
                     const RisConfiguration& ris);

/// Linear/quadratic coefficients of one cell's subproblem
///   minimize sum_l nu_l |phi|^2 + 2*Re{conj(phi) chi_l},
/// given every other cell fixed at its current value. Entry l refers to the
/// cell's antenna in sector l.
struct CellCoefficients {
    Eigen::VectorXcd chi;  // length L
    Eigen::VectorXd nu;    // length L, real >= 0
};

CellCoefficients cell_coefficients(const SumRateProblem& problem, const SectorAggregates& agg,
                                   const RisConfiguration& ris, int cell0);

/// Cost-minimizing phases: theta_l = arg(chi_l) + pi (mod 2*pi). Entries with
/// chi_l = 0 keep their previous phase.
Eigen::VectorXd continuous_phase_update(const CellCoefficients& cc,
                                        const Eigen::VectorXd& previous_theta);

struct RisDesignOptions {
    double sweep_tol = 1e-6;   // relative objective improvement to keep sweeping
    int max_sweeps = 50;
    double secular_tol = 1e-10;
};

/// Cyclic exact cell updates of the continuous surface subproblem. Sweeps
/// until the objective stalls; the result satisfies the per-cell unit sum to
/// floating-point accuracy.
RisConfiguration design_ris_continuous(const SumRateProblem& problem,
                                       const SectorAggregates& agg, RisConfiguration ris,
                                       const RisDesignOptions& opts = {});

/// Discrete counterpart: per cell, quantize the continuous phases, optimize
/// amplitudes against the quantized-phase objective, quantize them to the
/// grid and repair the cell sum. The result validates discretely.
RisConfiguration design_ris_discrete(const SumRateProblem& problem, const SectorAggregates& agg,
                                     RisConfiguration ris, const Codebook& cb,
                                     const RisDesignOptions& opts = {});

enum class RisMode { Continuous, Discrete };

struct SolveOptions {
    RisMode mode = RisMode::Continuous;
    std::optional<Codebook> codebook;  // required in discrete mode
    double rate_tol = 1e-4;            // relative sum-rate change across an outer iteration
    int max_outer = 200;
    RisDesignOptions ris;
};

/// Surrogate checkpoints of one outer iteration, plus the sum rate at its end.
struct IterationTrace {
    double surrogate_aux = 0.0;       // after the joint auxiliary update
    double surrogate_precoder = 0.0;  // after the precoder update
    double surrogate_ris = 0.0;       // after the surface update
    double sum_rate = 0.0;
};

struct SolveReport {
    std::vector<IterationTrace> trajectory;
    int iterations = 0;
    bool converged = false;
    double final_sum_rate = 0.0;
    double ris_residual = 0.0;   // max cell-sum deviation of the returned configuration
    double power_slack = 0.0;    // budget minus ||W||_F^2
    double wall_seconds = 0.0;
};

struct SolveResult {
    RisConfiguration ris;
    Eigen::MatrixXcd precoder;
    SolveReport report;
};

/// Block-coordinate ascent on the sum-rate surrogate: auxiliaries, precoder,
/// then the surface, repeated until the sum rate stalls or the iteration cap
/// is hit (reported, not thrown). In continuous mode the surrogate checkpoint
/// sequence is non-decreasing.
SolveResult solve(const SumRateProblem& problem, const SolveOptions& opts = {});

}  // namespace bdris::fp
