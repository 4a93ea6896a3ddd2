#pragma once

#include <Eigen/Dense>

namespace bdris::fp {

/// The per-cell amplitude subproblem
///
///     minimize  a' * diag(nu) * a - 2 * chi' * a   subject to  ||a||_2 = 1
///
/// over the amplitude vector a (entries sqrt(beta_i) >= 0), with nu >= 0 and
/// chi >= 0 entrywise. Its stationarity system (diag(nu) + mu*I) a = chi with
/// diag(nu) + mu*I PSD reduces the multiplier search to the scalar secular
/// equation g(mu) = sum_i chi_i^2 / (nu_i + mu)^2 = 1.

/// g(mu). Terms with chi_i = 0 are dropped (their limit is zero); a pole
/// nu_i + mu <= 0 under nonzero chi_i raises std::domain_error.
double secular_value(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi, double mu);

struct SecularBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Multiplier bracket [sqrt(sum_{i in E} chi_i^2) - nu_min, ||chi|| - nu_min]
/// where E collects the indices attaining nu_min (relative tolerance 1e-12).
/// Guarantees g(lower) >= 1 >= g(upper) whenever chi is nonzero on E.
/// Throws std::invalid_argument for chi = 0.
SecularBracket secular_bracket(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi);

struct CellAmplitudeSolution {
    double multiplier = 0.0;       // mu*, certifies nu_min + mu* >= 0
    Eigen::VectorXd amplitude;     // unit 2-norm, entrywise >= 0
};

/// Global minimizer of the cell subproblem.
///
/// Bisection runs on the bracket until |g - 1| <= tol or the bracket width
/// falls below 1e-14. Degenerate brackets (all nu equal) collapse to a direct
/// solve. When chi vanishes on the minimal-nu set and g stays below one at
/// the pole, no interior root exists; the minimizer then takes mu = -nu_min
/// and places the norm remainder on the first minimal-nu coordinate. chi = 0
/// falls back to all weight on the first minimal-nu coordinate.
CellAmplitudeSolution solve_cell_amplitudes(const Eigen::VectorXd& nu,
                                            const Eigen::VectorXd& chi, double tol = 1e-10);

/// Subproblem objective a' * diag(nu) * a - 2 * chi' * a.
double cell_objective(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi,
                      const Eigen::VectorXd& amplitude);

}  // namespace bdris::fp
