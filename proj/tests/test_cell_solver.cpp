#include <doctest.h>

#include <cmath>
#include <limits>

#include "bdris/fp/cell_solver.hpp"
#include "bdris/rng.hpp"

using namespace bdris;
using namespace bdris::fp;

namespace {

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

/// Best objective over random unit vectors in the nonnegative orthant, the
/// brute-force oracle for the sphere-constrained quadratic.
double sphere_grid_best(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi, int points,
                        Rng& rng) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd a(nu.size());
    for (int p = 0; p < points; ++p) {
        for (int i = 0; i < a.size(); ++i) a(i) = std::abs(rng.normal());
        a /= a.norm();
        best = std::min(best, cell_objective(nu, chi, a));
    }
    return best;
}

/// High-precision root of g(mu) = 1 found independently by long bisection
/// from a widened bracket.
double oracle_root(const Eigen::VectorXd& nu, const Eigen::VectorXd& chi) {
    double lo = -nu.minCoeff() + 1e-300;
    double hi = chi.norm() - nu.minCoeff() + 1.0;
    while (secular_value(nu, chi, lo) < 1.0) lo += 1e-12;  // nudge off the pole if needed
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (secular_value(nu, chi, mid) >= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE_BEGIN("cell_solver");

TEST_CASE("secular value") {
    const Eigen::VectorXd nu = vec2(1.0, 2.0);
    const Eigen::VectorXd chi = vec2(1.0, 1.0);
    CHECK(secular_value(nu, chi, 0.0) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(secular_value(nu, chi, 0.13225) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(secular_value(nu, chi, -1.0), std::domain_error);

    SUBCASE("strictly decreasing on the valid domain") {
        double prev = secular_value(nu, chi, -0.9);
        for (double mu = -0.8; mu < 3.0; mu += 0.1) {
            const double g = secular_value(nu, chi, mu);
            CHECK(g < prev);
            prev = g;
        }
    }
    SUBCASE("zero-chi entries are ignored even at their pole") {
        CHECK(secular_value(vec2(0.0, 2.0), vec2(0.0, 1.0), 0.0) ==
              doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("multiplier bracket") {
    SUBCASE("equal diagonal collapses the bracket") {
        const auto b = secular_bracket(vec2(1.0, 1.0), vec2(3.0, 4.0));
        CHECK(b.lower == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("distinct diagonal") {
        const auto b = secular_bracket(vec2(1.0, 2.0), vec2(1.0, 1.0));
        CHECK(b.lower == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
        CHECK(secular_value(vec2(1.0, 2.0), vec2(1.0, 1.0), b.lower) >= 1.0);
        CHECK(secular_value(vec2(1.0, 2.0), vec2(1.0, 1.0), b.upper) ==
              doctest::Approx(0.67157).epsilon(1e-4));
    }
    SUBCASE("ties are detected within relative tolerance") {
        const auto b = secular_bracket(vec2(1.0, 1.0 + 1e-13), vec2(3.0, 4.0));
        CHECK(b.lower == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(secular_bracket(vec2(1.0, 2.0), vec2(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("sphere-constrained cell amplitudes") {
    SUBCASE("analytic symmetric case") {
        const auto sol = solve_cell_amplitudes(vec2(1.0, 1.0), vec2(3.0, 4.0));
        CHECK(sol.multiplier == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(sol.amplitude(0) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(sol.amplitude(1) == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(cell_objective(vec2(1.0, 1.0), vec2(3.0, 4.0), sol.amplitude) ==
              doctest::Approx(-9.0).epsilon(1e-10));
    }
    SUBCASE("bisection case against the frozen root") {
        const Eigen::VectorXd nu = vec2(1.0, 2.0);
        const Eigen::VectorXd chi = vec2(1.0, 1.0);
        const auto sol = solve_cell_amplitudes(nu, chi);
        CHECK(sol.multiplier == doctest::Approx(0.132241882312).epsilon(1e-8));
        CHECK(sol.amplitude(0) == doctest::Approx(0.883203505914).epsilon(1e-8));
        CHECK(sol.amplitude(1) == doctest::Approx(0.468989943540).epsilon(1e-8));
        CHECK(sol.multiplier == doctest::Approx(oracle_root(nu, chi)).epsilon(1e-9));
        Rng rng(23);
        const double grid_best = sphere_grid_best(nu, chi, 1000000, rng);
        CHECK(cell_objective(nu, chi, sol.amplitude) <= grid_best + 1e-6);
    }
    SUBCASE("random instances beat the sphere grid and certify optimality") {
        Rng rng(31);
        for (int rep = 0; rep < 60; ++rep) {
            const int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
            Eigen::VectorXd nu(n);
            Eigen::VectorXd chi(n);
            for (int i = 0; i < n; ++i) {
                nu(i) = rng.uniform(0.0, 2.0);
                chi(i) = rng.uniform(1e-3, 1.0);
            }
            const auto sol = solve_cell_amplitudes(nu, chi);
            CHECK(std::abs(sol.amplitude.norm() - 1.0) <= 1e-8);
            CHECK((sol.amplitude.array() >= 0.0).all());
            CHECK(nu.minCoeff() + sol.multiplier >= -1e-10);
            const double f = cell_objective(nu, chi, sol.amplitude);
            CHECK(f <= sphere_grid_best(nu, chi, 20000, rng) + 1e-6);
        }
    }
    SUBCASE("zero linear term selects the smallest diagonal entry") {
        const auto sol = solve_cell_amplitudes(vec2(0.7, 0.2), vec2(0.0, 0.0));
        CHECK(sol.amplitude(0) == 0.0);
        CHECK(sol.amplitude(1) == 1.0);
        CHECK(sol.multiplier == doctest::Approx(-0.2).epsilon(1e-14));
    }
    SUBCASE("vanishing chi on the minimal diagonal entry still yields a unit solution") {
        // no interior root: weight lands on the cheap coordinate
        Eigen::VectorXd nu(3);
        nu << 0.0, 5.0, 6.0;
        Eigen::VectorXd chi(3);
        chi << 0.0, 1.0, 0.5;
        const auto sol = solve_cell_amplitudes(nu, chi);
        CHECK(std::abs(sol.amplitude.norm() - 1.0) <= 1e-12);
        CHECK(nu.minCoeff() + sol.multiplier >= -1e-12);
        CHECK(sol.amplitude(0) > 0.0);
        Rng rng(5);
        CHECK(cell_objective(nu, chi, sol.amplitude) <=
              sphere_grid_best(nu, chi, 50000, rng) + 1e-6);
    }
    SUBCASE("denormal coefficients are handled by normalization") {
        Eigen::VectorXd nu = vec2(8.8e-211, 1.1e-06);
        Eigen::VectorXd chi = vec2(5.1e-271, 1.0e-03);
        const auto sol = solve_cell_amplitudes(nu, chi);
        CHECK(std::abs(sol.amplitude.norm() - 1.0) <= 1e-8);
        CHECK(sol.amplitude(1) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_SUITE_END();
