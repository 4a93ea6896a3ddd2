#include "bdris/fp/cell_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bdris::fp {

namespace {

constexpr double kTieRelTol = 1e-12;
constexpr double kWidthTol = 1e-14;
constexpr int kMaxBisect = 300;

void check_inputs(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi) {
    if (nu.size() != chi.size() || nu.size() == 0) {
        throw std::invalid_argument("cell solver: nu/chi size mismatch");
    }
    if ((nu.array() < 0.0).any()) {
        throw std::invalid_argument("cell solver: nu must be entrywise >= 0");
    }
    if ((chi.array() < 0.0).any()) {
        throw std::invalid_argument("cell solver: chi must be entrywise >= 0");
    }
}

int min_nu_index(const Eigen::VectorXd& nu) {
    int idx = 0;
    for (int i = 1; i < nu.size(); ++i) {
        if (nu(i) < nu(idx)) idx = i;
    }
    return idx;
}

/// Sum of chi^2 over the indices tied with the minimal nu.
double minimal_set_mass(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi, double nu_min) {
    const double tol = kTieRelTol * std::max(1.0, std::abs(nu_min));
    double mass = 0.0;
    for (int i = 0; i < nu.size(); ++i) {
        if (nu(i) <= nu_min + tol) mass += chi(i) * chi(i);
    }
    return mass;
}

Eigen::VectorXd amplitude_from(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi, double mu) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(nu.size());
    for (int i = 0; i < nu.size(); ++i) {
        if (chi(i) > 0.0) a(i) = chi(i) / (nu(i) + mu);
    }
    return a;
}

}  // namespace

double secular_value(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi, double mu) {
    check_inputs(nu, chi);
    double g = 0.0;
    for (int i = 0; i < nu.size(); ++i) {
        if (chi(i) == 0.0) continue;
        const double d = nu(i) + mu;
        if (d <= 0.0) {
            throw std::domain_error("secular_value: pole, nu_i + mu <= 0 with chi_i > 0");
        }
        g += chi(i) * chi(i) / (d * d);
    }
    return g;
}

SecularBracket secular_bracket(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi) {
    check_inputs(nu, chi);
    if (chi.isZero(0.0)) {
        throw std::invalid_argument("secular_bracket: chi must be nonzero");
    }
    const double nu_min = nu.minCoeff();
    SecularBracket b;
    b.lower = std::sqrt(minimal_set_mass(nu, chi, nu_min)) - nu_min;
    b.upper = chi.norm() - nu_min;
    return b;
}

CellAmplitudeSolution solve_cell_amplitudes(const Eigen::VectorXd& nu_in,
                                            const Eigen::VectorXd& chi_in, double tol) {
    check_inputs(nu_in, chi_in);

    // The solution is scale-equivariant: scaling (nu, chi) by c scales mu by c
    // and keeps the amplitudes. Normalizing guards the squared terms against
    // under/overflow; chi entries negligible at working precision are dropped
    // (their amplitudes would round to zero anyway).
    const double scale = std::max(nu_in.maxCoeff(), chi_in.maxCoeff());
    Eigen::VectorXd nu = nu_in;
    Eigen::VectorXd chi = chi_in;
    if (scale > 0.0) {
        nu /= scale;
        chi /= scale;
        for (int i = 0; i < chi.size(); ++i) {
            if (chi(i) < 1e-150) chi(i) = 0.0;
        }
    }

    const int first_min = min_nu_index(nu);
    const double nu_min = nu(first_min);

    CellAmplitudeSolution sol;
    if (chi.isZero(0.0)) {
        // No linear term: any minimal-nu direction is optimal.
        sol.multiplier = -nu_min * scale;
        sol.amplitude = Eigen::VectorXd::Zero(nu.size());
        sol.amplitude(first_min) = 1.0;
        return sol;
    }

    const double minimal_mass = minimal_set_mass(nu, chi, nu_min);
    double lo;
    double hi = chi.norm() - nu_min;
    if (minimal_mass > 0.0) {
        lo = std::sqrt(minimal_mass) - nu_min;
    } else {
        // chi vanishes on the minimal-nu set; g stays finite at the pole.
        lo = -nu_min;
        const double g_pole = secular_value(nu, chi, lo);
        if (g_pole < 1.0) {
            // No interior root: park the multiplier at the pole and put the
            // norm remainder on the first minimal-nu coordinate.
            sol.multiplier = lo * scale;
            sol.amplitude = amplitude_from(nu, chi, lo);
            sol.amplitude(first_min) = std::sqrt(std::max(0.0, 1.0 - g_pole));
            return sol;
        }
    }

    double mu = hi;
    if (hi - lo > kWidthTol) {
        for (int it = 0; it < kMaxBisect; ++it) {
            mu = 0.5 * (lo + hi);
            const double g = secular_value(nu, chi, mu);
            if (std::abs(g - 1.0) <= tol || hi - lo < kWidthTol) break;
            if (g >= 1.0) {
                lo = mu;
            } else {
                hi = mu;
            }
        }
    } else {
        mu = lo;  // degenerate bracket (all nu equal on the support)
    }

    sol.multiplier = mu * scale;
    sol.amplitude = amplitude_from(nu, chi, mu);
    return sol;
}

double cell_objective(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi,
                      const Eigen::VectorXd& amplitude) {
    return amplitude.cwiseProduct(nu.cwiseProduct(amplitude)).sum() - 2.0 * chi.dot(amplitude);
}

}  // namespace bdris::fp
