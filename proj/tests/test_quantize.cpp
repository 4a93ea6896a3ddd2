#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "bdris/fp/quantize.hpp"
#include "bdris/rng.hpp"

using namespace bdris;
using namespace bdris::fp;

namespace {
constexpr double kPi = std::numbers::pi;

/// Recomputes the greedy choice of one recorded repair step exhaustively.
void check_step_is_argmin(const RepairStep& step, const Eigen::VectorXd& nu,
                          const Eigen::VectorXd& lin, const Codebook& cb) {
    const int top = cb.amp_levels() - 1;
    int best = -1;
    double best_delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < step.levels_before.size(); ++i) {
        const int lv = step.levels_before[i];
        const bool eligible = step.direction > 0 ? lv < top : lv > 0;
        if (!eligible) continue;
        const double d =
            repair_step_delta(lv, step.direction, nu(static_cast<int>(i)),
                              lin(static_cast<int>(i)), cb);
        if (d < best_delta) {  // strict: ties break to the lowest index
            best_delta = d;
            best = static_cast<int>(i);
        }
    }
    CHECK(step.chosen == best);
}

}  // namespace

TEST_SUITE_BEGIN("quantize");

TEST_CASE("phase quantization") {
    const Codebook cb2(1, 2);  // phase step pi/2
    CHECK(quantize_phase(1.2, cb2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(quantize_phase(4.0, cb2) == doctest::Approx(3.0 * kPi / 2).epsilon(1e-15));
    const Codebook cb1(1, 1);  // phase step pi; the halfway tie rounds away from zero
    CHECK(quantize_phase(kPi / 2, cb1) == doctest::Approx(kPi).epsilon(1e-15));
    SUBCASE("wraps to the canonical range") {
        const Codebook cb(1, 3);
        const double near_full = 2.0 * kPi - 1e-9;
        CHECK(quantize_phase(near_full, cb) == 0.0);
        CHECK(quantize_phase_level(near_full, cb) == 0);
    }
    SUBCASE("nearest in angular distance") {
        Rng rng(3);
        const Codebook cb(1, 4);
        for (int rep = 0; rep < 500; ++rep) {
            const double theta = rng.uniform(0.0, 2.0 * kPi);
            const double q = quantize_phase(theta, cb);
            double best = 1e9;
            for (int b = 0; b < cb.phase_levels(); ++b) {
                const double cand = cb.phase_value(b);
                const double dist =
                    std::abs(std::remainder(theta - cand, 2.0 * kPi));
                best = std::min(best, dist);
            }
            const double got = std::abs(std::remainder(theta - q, 2.0 * kPi));
            CHECK(got == doctest::Approx(best).epsilon(1e-9));
        }
    }
}

TEST_CASE("amplitude quantization") {
    const Codebook cb(2, 1);  // step 1/3
    Eigen::VectorXd beta(3);
    beta << 0.5, 0.3, 0.2;
    const auto levels = quantize_amplitudes(beta, cb);
    // 0.5/(1/3) = 1.5 rounds away from zero to 2
    CHECK(levels == std::vector<int>{2, 1, 1});
    long sum = 0;
    for (int lv : levels) sum += lv;
    CHECK(sum == 4);  // exceeds the unit target of 3 grid units before repair

    const Codebook cb1(1, 1);
    Eigen::VectorXd onoff(2);
    onoff << 1.0, 0.0;
    CHECK(quantize_amplitudes(onoff, cb1) == std::vector<int>{1, 0});
    CHECK_THROWS_AS(quantize_amp_level(1.5, cb), std::domain_error);
}

TEST_CASE("cell-sum repair") {
    SUBCASE("balanced input is untouched") {
        const Codebook cb(2, 2);
        std::vector<int> levels{2, 1, 0};
        RepairLog log;
        repair_cell_amplitudes(levels, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3), cb,
                               &log);
        CHECK(log.initial_deficit == 0);
        CHECK(log.steps.empty());
        CHECK(levels == std::vector<int>{2, 1, 0});
    }
    SUBCASE("hand-worked removal step") {
        // over by one grid unit; entry 1 loses its third: delta values are
        // (0.1449.., -1/3, -1/3) and the tie breaks to index 1
        const Codebook cb(2, 2);
        std::vector<int> levels{2, 1, 1};
        Eigen::VectorXd nu = Eigen::VectorXd::Ones(3);
        Eigen::VectorXd lin(3);
        lin << -1.0, 0.0, 0.0;  // |chi| = 1 with perfectly opposed phase on entry 0
        RepairLog log;
        repair_cell_amplitudes(levels, nu, lin, cb, &log);
        CHECK(log.initial_deficit == -1);
        REQUIRE(log.steps.size() == 1);
        const double delta0 = repair_step_delta(2, -1, 1.0, -1.0, cb);
        CHECK(delta0 == doctest::Approx(0.14496).epsilon(1e-3));
        CHECK(log.steps[0].chosen == 1);
        CHECK(levels == std::vector<int>{2, 0, 1});
    }
    SUBCASE("random stress: exact sums and per-step optimality") {
        Rng rng(19);
        for (int rep = 0; rep < 300; ++rep) {
            const int bits = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
            const Codebook cb(bits, 2);
            const int n = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
            std::vector<int> levels(n);
            for (int& lv : levels) lv = static_cast<int>(rng.uniform(0.0, cb.amp_levels()));
            Eigen::VectorXd nu(n);
            Eigen::VectorXd lin(n);
            for (int i = 0; i < n; ++i) {
                nu(i) = rng.uniform(0.0, 2.0);
                lin(i) = -rng.uniform(0.0, 1.0);
            }
            RepairLog log;
            repair_cell_amplitudes(levels, nu, lin, cb, &log);
            long sum = 0;
            for (int lv : levels) {
                CHECK(lv >= 0);
                CHECK(lv < cb.amp_levels());
                sum += lv;
            }
            CHECK(sum == cb.amp_levels() - 1);
            for (const auto& step : log.steps) check_step_is_argmin(step, nu, lin, cb);
        }
    }
}

TEST_SUITE_END();
