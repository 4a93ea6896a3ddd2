#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bdris/codebook.hpp"

namespace bdris::fp {

/// Nearest phase codeword index for theta (radians), rounding half away from
/// zero and wrapping to {0, ..., 2^B-1}.
int quantize_phase_level(double theta, const Codebook& cb);

/// Nearest phase codeword value, canonical in [0, 2*pi).
double quantize_phase(double theta, const Codebook& cb);

/// Nearest amplitude-square grid level for beta in [0, 1], rounding half away
/// from zero.
int quantize_amp_level(double beta, const Codebook& cb);

/// Entrywise nearest grid levels for an amplitude-square vector.
std::vector<int> quantize_amplitudes(const Eigen::VectorXd& beta, const Codebook& cb);

/// One greedy repair step, recorded for verification.
struct RepairStep {
    std::vector<int> levels_before;  // grid state the step was chosen from
    int direction = 0;               // +1 raises a level, -1 lowers one
    int chosen = -1;                 // index that received the step
};

struct RepairLog {
    long initial_deficit = 0;  // grid units missing from the unit cell sum
    std::vector<RepairStep> steps;
};

/// Restores the exact per-cell unit sum (in grid units) after amplitude
/// quantization by greedy single-step moves.
///
/// The per-antenna objective is f_i(beta) = nu_i * beta + 2 * lin_i *
/// sqrt(beta) with lin_i the signed linear coefficient under the already
/// quantized phase. While the cell sum is short, the step +Delta_A with the
/// smallest objective increase delta_i (among entries below one) is applied;
/// while it is over, the step -Delta_A with the smallest delta_i (among
/// entries above zero) is applied. Ties break to the lowest antenna index.
void repair_cell_amplitudes(std::vector<int>& levels, const Eigen::VectorXd& nu,
                            const Eigen::VectorXd& lin, const Codebook& cb,
                            RepairLog* log = nullptr);

/// delta_i of a candidate step for the exhaustive per-step check:
/// f_i(value at level + direction) - f_i(value at level).
double repair_step_delta(int level, int direction, double nu_i, double lin_i,
                         const Codebook& cb);

}  // namespace bdris::fp
