#include "bdris/ris_config.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bdris/errors.hpp"

namespace bdris {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBetaRangeTol = 1e-12;
constexpr double kGridMatchTol = 1e-12;
}  // namespace

double canonical_phase(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;  // fmod can land exactly on 2*pi after the shift
    return t;
}

RisConfiguration::RisConfiguration(int total)
    : beta_(static_cast<std::size_t>(total), 0.0),
      theta_(static_cast<std::size_t>(total), 0.0),
      grid_(static_cast<std::size_t>(total), -1) {
    if (total < 1) {
        throw std::invalid_argument("RisConfiguration: need at least one coefficient");
    }
}

RisConfiguration RisConfiguration::equal_split(const SectorLayout& layout) {
    RisConfiguration cfg(layout.total());
    const double share = 1.0 / static_cast<double>(layout.sectors());
    for (int i = 0; i < cfg.size(); ++i) {
        cfg.beta_[static_cast<std::size_t>(i)] = share;
    }
    return cfg;
}

std::complex<double> RisConfiguration::phi(int i) const {
    const auto idx = static_cast<std::size_t>(i);
    return std::polar(std::sqrt(beta_[idx]), theta_[idx]);
}

Eigen::VectorXcd RisConfiguration::phi() const {
    Eigen::VectorXcd out(size());
    for (int i = 0; i < size(); ++i) out(i) = phi(i);
    return out;
}

Eigen::VectorXcd RisConfiguration::sector_phi(const SectorLayout& layout, int l0) const {
    Eigen::VectorXcd out(layout.cells());
    for (int m0 = 0; m0 < layout.cells(); ++m0) out(m0) = phi(layout.flat(l0, m0));
    return out;
}

void RisConfiguration::set_continuous(int i, double beta, double theta) {
    const auto idx = static_cast<std::size_t>(i);
    beta_[idx] = beta;
    theta_[idx] = canonical_phase(theta);
    grid_[idx] = -1;
}

void RisConfiguration::set_discrete(int i, int amp_level, double theta, const Codebook& cb) {
    if (grid_amp_bits_ != 0 && grid_amp_bits_ != cb.amp_bits()) {
        throw std::invalid_argument("RisConfiguration: mixed amplitude codebooks");
    }
    if (amp_level < 0 || amp_level >= cb.amp_levels()) {
        throw std::invalid_argument("RisConfiguration: amplitude level outside codebook");
    }
    grid_amp_bits_ = cb.amp_bits();
    const auto idx = static_cast<std::size_t>(i);
    beta_[idx] = cb.amp_value(amp_level);
    theta_[idx] = canonical_phase(theta);
    grid_[idx] = amp_level;
}

bool RisConfiguration::fully_discrete() const {
    if (grid_amp_bits_ == 0) return false;
    for (int g : grid_) {
        if (g < 0) return false;
    }
    return true;
}

double validate_continuous(const RisConfiguration& cfg, const SectorLayout& layout) {
    if (cfg.size() != layout.total()) {
        throw std::invalid_argument("validate_continuous: configuration size mismatch");
    }
    for (int i = 0; i < cfg.size(); ++i) {
        const double b = cfg.beta(i);
        if (b < -kBetaRangeTol || b > 1.0 + kBetaRangeTol) {
            throw ConstraintViolation(
                "amplitude square " + std::to_string(b) + " outside [0,1] at antenna " +
                    std::to_string(i + 1),
                i);
        }
    }
    double worst = 0.0;
    for (int m0 = 0; m0 < layout.cells(); ++m0) {
        double sum = 0.0;
        for (int l0 = 0; l0 < layout.sectors(); ++l0) sum += cfg.beta(layout.flat(l0, m0));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

namespace {

void add_violation(std::vector<DiscreteViolation>* diag, DiscreteViolation::Kind kind, int index,
                   std::string detail) {
    if (diag != nullptr) diag->push_back({kind, index, std::move(detail)});
}

/// Grid level of a free-valued entry, or -1 when it is not on the grid.
int derive_amp_level(double beta, const Codebook& cb) {
    const auto level = static_cast<int>(std::llround(beta / cb.amp_step()));
    if (level < 0 || level >= cb.amp_levels()) return -1;
    if (std::abs(beta - cb.amp_value(level)) > kGridMatchTol) return -1;
    return level;
}

int derive_phase_level(double theta, const Codebook& cb) {
    auto level = static_cast<int>(std::llround(theta / cb.phase_step()));
    const int wrapped = level % cb.phase_levels();
    double ref = cb.phase_value(wrapped);
    // level == 2^B means theta sits just below 2*pi; compare against 2*pi.
    if (level == cb.phase_levels()) ref = 2.0 * std::numbers::pi;
    if (std::abs(theta - ref) > kGridMatchTol) return -1;
    return wrapped;
}

}  // namespace

bool validate_discrete(const RisConfiguration& cfg, const SectorLayout& layout,
                       const Codebook& cb, std::vector<DiscreteViolation>* diagnostics) {
    if (cfg.size() != layout.total()) {
        throw std::invalid_argument("validate_discrete: configuration size mismatch");
    }
    bool ok = true;
    std::vector<int> level(static_cast<std::size_t>(cfg.size()), -1);
    const bool annotated = cfg.fully_discrete() && cfg.grid_amp_bits() == cb.amp_bits();
    for (int i = 0; i < cfg.size(); ++i) {
        int a = annotated ? cfg.grid_level(i) : derive_amp_level(cfg.beta(i), cb);
        if (annotated && std::abs(cfg.beta(i) - cb.amp_value(a)) > kGridMatchTol) a = -1;
        if (a < 0) {
            ok = false;
            add_violation(diagnostics, DiscreteViolation::Kind::AmplitudeOffGrid, i,
                          "beta=" + std::to_string(cfg.beta(i)));
        }
        level[static_cast<std::size_t>(i)] = a;
        if (derive_phase_level(cfg.theta(i), cb) < 0) {
            ok = false;
            add_violation(diagnostics, DiscreteViolation::Kind::PhaseOffGrid, i,
                          "theta=" + std::to_string(cfg.theta(i)));
        }
    }
    const int target = cb.amp_levels() - 1;  // one in grid units
    for (int m0 = 0; m0 < layout.cells(); ++m0) {
        long sum = 0;
        bool known = true;
        for (int l0 = 0; l0 < layout.sectors(); ++l0) {
            const int a = level[static_cast<std::size_t>(layout.flat(l0, m0))];
            if (a < 0) {
                known = false;
                break;
            }
            sum += a;
        }
        if (known && sum != target) {
            ok = false;
            add_violation(diagnostics, DiscreteViolation::Kind::CellSum, m0,
                          "cell " + std::to_string(m0 + 1) + " sums to " + std::to_string(sum) +
                              "/" + std::to_string(target) + " grid units");
        }
    }
    return ok;
}

Eigen::MatrixXcd assemble_stacked_phi(const RisConfiguration& cfg, const SectorLayout& layout) {
    if (cfg.size() != layout.total()) {
        throw std::invalid_argument("assemble_stacked_phi: configuration size mismatch");
    }
    Eigen::MatrixXcd stacked = Eigen::MatrixXcd::Zero(layout.total(), layout.cells());
    for (int l0 = 0; l0 < layout.sectors(); ++l0) {
        for (int m0 = 0; m0 < layout.cells(); ++m0) {
            stacked(layout.flat(l0, m0), m0) = cfg.phi(layout.flat(l0, m0));
        }
    }
    return stacked;
}

}  // namespace bdris
