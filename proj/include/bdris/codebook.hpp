#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bdris {

/// Finite value sets for discrete RIS coefficients: 2^A amplitude-square
/// levels uniform on [0,1] (step 1/(2^A-1)) and 2^B phases uniform on
/// [0, 2*pi) (step 2*pi/2^B).
class Codebook {
public:
    Codebook(int amp_bits, int phase_bits) : amp_bits_(amp_bits), phase_bits_(phase_bits) {
        if (amp_bits < 1 || phase_bits < 1) {
            throw std::invalid_argument("Codebook: bit widths must be >= 1");
        }
        if (amp_bits > 30 || phase_bits > 30) {
            throw std::invalid_argument("Codebook: bit widths above 30 are not supported");
        }
    }

    int amp_bits() const noexcept { return amp_bits_; }
    int phase_bits() const noexcept { return phase_bits_; }

    int amp_levels() const noexcept { return 1 << amp_bits_; }
    int phase_levels() const noexcept { return 1 << phase_bits_; }

    /// Amplitude-square grid step (distance between adjacent levels).
    double amp_step() const noexcept { return 1.0 / (amp_levels() - 1); }

    /// Phase grid step in radians.
    double phase_step() const noexcept {
        return 2.0 * std::numbers::pi / static_cast<double>(phase_levels());
    }

    /// Amplitude-square value of grid level a in {0, ..., 2^A-1}.
    double amp_value(int level) const { return static_cast<double>(level) * amp_step(); }

    /// Phase value of grid level b in {0, ..., 2^B-1}.
    double phase_value(int level) const { return static_cast<double>(level) * phase_step(); }

private:
    int amp_bits_;
    int phase_bits_;
};

}  // namespace bdris
