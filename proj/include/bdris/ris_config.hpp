#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bdris/codebook.hpp"
#include "bdris/layout.hpp"

namespace bdris {

/// Reduce a phase to the canonical half-open interval [0, 2*pi).
double canonical_phase(double theta);

/// The LM complex surface coefficients phi_i = sqrt(beta_i) * exp(j*theta_i),
/// stored as amplitude squares and canonical phases.
///
/// Coefficients written through set_discrete additionally carry their integer
/// amplitude grid level, so discrete cell-sum checks run in exact integer
/// arithmetic instead of accumulating floating-point grid values.
class RisConfiguration {
public:
    explicit RisConfiguration(int total);

    /// beta_i = 1/L, theta_i = 0: feasible and symmetric across sectors.
    static RisConfiguration equal_split(const SectorLayout& layout);

    int size() const noexcept { return static_cast<int>(beta_.size()); }

    double beta(int i) const { return beta_[static_cast<std::size_t>(i)]; }
    double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
    std::complex<double> phi(int i) const;

    /// All LM coefficients as a dense complex vector.
    Eigen::VectorXcd phi() const;

    /// The M coefficients of sector l0 (0-based), i.e. the diagonal of the
    /// sector's scattering block.
    Eigen::VectorXcd sector_phi(const SectorLayout& layout, int l0) const;

    /// Overwrite coefficient i with free-valued amplitude square and phase.
    /// Drops any grid annotation on that entry. The phase is canonicalized.
    void set_continuous(int i, double beta, double theta);

    /// Overwrite coefficient i with codebook values: amplitude level in
    /// {0..2^A-1} and an exact phase from the phase grid.
    void set_discrete(int i, int amp_level, double theta, const Codebook& cb);

    /// True when every entry carries a grid annotation (all written through
    /// set_discrete with one codebook).
    bool fully_discrete() const;

    /// Grid level of entry i, or -1 when the entry is free-valued.
    int grid_level(int i) const { return grid_[static_cast<std::size_t>(i)]; }

    /// Amplitude bit width shared by the grid annotations (0 when none).
    int grid_amp_bits() const noexcept { return grid_amp_bits_; }

private:
    std::vector<double> beta_;
    std::vector<double> theta_;
    std::vector<int> grid_;
    int grid_amp_bits_ = 0;
};

/// Max over cells of |sum_i beta_i - 1|. Throws ConstraintViolation when some
/// beta_i leaves [0,1] by more than 1e-12.
double validate_continuous(const RisConfiguration& cfg, const SectorLayout& layout);

struct DiscreteViolation {
    enum class Kind { AmplitudeOffGrid, PhaseOffGrid, CellSum };
    Kind kind;
    int index;  // offending antenna (0-based), or cell index for CellSum
    std::string detail;
};

/// True iff every amplitude square sits on the codebook grid, every phase on
/// the phase grid, and every cell sums to one exactly in grid units.
/// Violations, if any, are appended to `diagnostics` when it is non-null.
bool validate_discrete(const RisConfiguration& cfg, const SectorLayout& layout,
                       const Codebook& cb,
                       std::vector<DiscreteViolation>* diagnostics = nullptr);

/// Vertical stack of the L diagonal sector blocks (an LM x M matrix). Its
/// columns are orthonormal exactly when every cell satisfies the unit power
/// sum, which makes the Gram matrix a cheap constraint probe.
Eigen::MatrixXcd assemble_stacked_phi(const RisConfiguration& cfg, const SectorLayout& layout);

}  // namespace bdris
