#include "bdris/fp/quantize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdris::fp {

int quantize_phase_level(double theta, const Codebook& cb) {
    const auto raw = static_cast<long>(std::llround(theta / cb.phase_step()));
    const int n = cb.phase_levels();
    return static_cast<int>(((raw % n) + n) % n);
}

double quantize_phase(double theta, const Codebook& cb) {
    return cb.phase_value(quantize_phase_level(theta, cb));
}

int quantize_amp_level(double beta, const Codebook& cb) {
    if (beta < -1e-12 || beta > 1.0 + 1e-12) {
        throw std::domain_error("quantize_amp_level: beta outside [0,1]");
    }
    const auto raw = static_cast<long>(std::llround(beta * (cb.amp_levels() - 1)));
    return static_cast<int>(std::clamp(raw, 0L, static_cast<long>(cb.amp_levels() - 1)));
}

std::vector<int> quantize_amplitudes(const Eigen::VectorXd& beta, const Codebook& cb) {
    std::vector<int> levels(static_cast<std::size_t>(beta.size()));
    for (int i = 0; i < beta.size(); ++i) {
        levels[static_cast<std::size_t>(i)] = quantize_amp_level(beta(i), cb);
    }
    return levels;
}

double repair_step_delta(int level, int direction, double nu_i, double lin_i,
                         const Codebook& cb) {
    const double b0 = cb.amp_value(level);
    const double b1 = cb.amp_value(level + direction);
    return nu_i * (b1 - b0) + 2.0 * lin_i * (std::sqrt(b1) - std::sqrt(b0));
}

void repair_cell_amplitudes(std::vector<int>& levels, const Eigen::VectorXd& nu,
                            const Eigen::VectorXd& lin, const Codebook& cb, RepairLog* log) {
    const auto n = static_cast<int>(levels.size());
    if (nu.size() != n || lin.size() != n) {
        throw std::invalid_argument("repair_cell_amplitudes: size mismatch");
    }
    const int top = cb.amp_levels() - 1;
    long sum = 0;
    for (int lv : levels) {
        if (lv < 0 || lv > top) {
            throw std::invalid_argument("repair_cell_amplitudes: level outside codebook");
        }
        sum += lv;
    }
    long deficit = top - sum;  // > 0: cell short of unit sum, < 0: over
    if (log != nullptr) log->initial_deficit = deficit;
    assert(std::abs(deficit) <= static_cast<long>(n) * top);

    const int direction = deficit > 0 ? +1 : -1;
    for (; deficit != 0; deficit -= direction) {
        int best = -1;
        double best_delta = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const int lv = levels[static_cast<std::size_t>(i)];
            const bool eligible = direction > 0 ? lv < top : lv > 0;
            if (!eligible) continue;
            const double d = repair_step_delta(lv, direction, nu(i), lin(i), cb);
            if (d < best_delta) {
                best_delta = d;
                best = i;
            }
        }
        assert(best >= 0);  // a saturated cell cannot be on the short side
        if (log != nullptr) log->steps.push_back({levels, direction, best});
        levels[static_cast<std::size_t>(best)] += direction;
    }
}

}  // namespace bdris::fp
