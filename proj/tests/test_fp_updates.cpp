#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bdris/fp/solver.hpp"
#include "bdris/rng.hpp"
#include "support.hpp"

using namespace bdris;
using namespace bdris::fp;
using testsupport::random_problem;
using testsupport::random_ris;

namespace {

struct AuxState {
    Eigen::MatrixXcd scalars;
    Eigen::VectorXd rate_aux;
    Eigen::VectorXcd quad_aux;
};

AuxState aux_for(const SumRateProblem& p, const RisConfiguration& ris,
                 const Eigen::MatrixXcd& w) {
    AuxState s;
    const EffectiveVectors eff(p, w);
    s.scalars = effective_scalars(p, eff, ris);
    s.rate_aux = update_rate_aux(s.scalars, p.noise_power);
    s.quad_aux = update_quad_aux(s.rate_aux, s.scalars, p.noise_power);
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("fp_updates");

TEST_CASE("sum rate") {
    SUBCASE("single user, signal power three over unit noise") {
        // |v' phi|^2 = 3, sigma^2 = 1 -> log2(4) = 2
        SectorLayout layout(2, 1);
        SumRateProblem p{layout,
                         Eigen::MatrixXcd::Ones(1, 1),
                         {Eigen::VectorXcd::Ones(1) * std::sqrt(3.0)},
                         {0},
                         Eigen::VectorXd::Ones(1),
                         10.0};
        RisConfiguration ris(2);
        ris.set_continuous(0, 1.0, 0.0);
        CHECK(sum_rate(p, ris, Eigen::MatrixXcd::Ones(1, 1)) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal users see no interference") {
        // two users in one sector with disjoint antenna support
        SectorLayout layout(2, 2);
        Eigen::MatrixXcd tx(2, 2);
        tx << 1.0, 0.0, 0.0, 1.0;
        Eigen::VectorXcd h1(2);
        h1 << 2.0, 0.0;
        Eigen::VectorXcd h2(2);
        h2 << 0.0, 2.0;
        SumRateProblem p{layout, tx, {h1, h2}, {0, 0}, Eigen::VectorXd::Ones(2), 10.0};
        RisConfiguration ris(4);
        ris.set_continuous(0, 1.0, 0.0);
        ris.set_continuous(1, 1.0, 0.0);
        Eigen::MatrixXcd w(2, 2);
        w << 1.0, 0.0, 0.0, 1.0;
        const double s = 4.0;  // per-user signal power
        CHECK(sum_rate(p, ris, w) == doctest::Approx(2.0 * std::log2(1.0 + s)).epsilon(1e-12));
    }
    SUBCASE("matches the independent row-channel evaluation") {
        Rng rng(101);
        for (int rep = 0; rep < 25; ++rep) {
            const auto p = random_problem(rng, 2, 2, 2, 2);
            const auto ris = random_ris(rng, p.layout);
            const Eigen::MatrixXcd w = testsupport::random_cmatrix(rng, 2, 2);
            CHECK(sum_rate(p, ris, w) ==
                  doctest::Approx(testsupport::brute_force_sum_rate(p, ris, w)).epsilon(1e-10));
        }
    }
}

TEST_CASE("auxiliary updates") {
    SUBCASE("rate auxiliary equals the SINR") {
        Eigen::MatrixXcd scalars(1, 1);
        scalars << 1.0;  // zero interference, |signal|^2 = 1
        CHECK(update_rate_aux(scalars, Eigen::VectorXd::Ones(1))(0) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("quad auxiliary closed form and its 1-D optimality") {
        // signal 1, denominator 2, iota = 1 -> tau = sqrt(2)/2
        Eigen::MatrixXcd scalars(1, 1);
        scalars << 1.0;
        Eigen::VectorXd iota = Eigen::VectorXd::Ones(1);
        const Eigen::VectorXcd tau = update_quad_aux(iota, scalars, Eigen::VectorXd::Ones(1));
        CHECK(std::abs(tau(0) - std::complex<double>(std::numbers::sqrt2 / 2.0, 0.0)) < 1e-12);
        // numeric scan of the surrogate in tau confirms the stationary point
        const auto term = [&](double t) {
            return 2.0 * std::sqrt(2.0) * t - t * t * 2.0;
        };
        const double at_closed_form = term(std::real(tau(0)));
        for (double t = 0.0; t <= 1.5; t += 1e-3) {
            CHECK(term(t) <= at_closed_form + 1e-12);
        }
        // zero signal gives zero auxiliary
        scalars(0, 0) = 0.0;
        CHECK(std::abs(update_quad_aux(iota, scalars, Eigen::VectorXd::Ones(1))(0)) == 0.0);
    }
    SUBCASE("surrogate equals the rate right after the auxiliary pair") {
        Rng rng(7);
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = random_problem(rng, 3, 4, 2, 3);
            const auto ris = random_ris(rng, p.layout);
            const auto w = testsupport::matched_filter_precoder(p, ris);
            const AuxState s = aux_for(p, ris, w);
            const double surrogate =
                surrogate_bits(s.scalars, s.rate_aux, s.quad_aux, p.noise_power);
            const double rate = sum_rate_from_scalars(s.scalars, p.noise_power);
            double direct = 0.0;
            for (int k = 0; k < 4; ++k) direct += std::log2(1.0 + s.rate_aux(k));
            CHECK(surrogate == doctest::Approx(rate).epsilon(1e-9));
            CHECK(surrogate == doctest::Approx(direct).epsilon(1e-9));
        }
    }
    SUBCASE("the pair never lowers the surrogate from a stale state") {
        Rng rng(8);
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = random_problem(rng, 2, 4, 2, 3);
            const auto ris = random_ris(rng, p.layout);
            const auto w = testsupport::matched_filter_precoder(p, ris);
            AuxState s = aux_for(p, ris, w);
            // perturb the optimization state, then re-update on the same channel
            Eigen::VectorXd stale_iota = s.rate_aux * 0.5;
            Eigen::VectorXcd stale_tau = s.quad_aux * std::complex<double>(0.9, 0.2);
            const double before =
                surrogate_bits(s.scalars, stale_iota, stale_tau, p.noise_power);
            const Eigen::VectorXd iota = update_rate_aux(s.scalars, p.noise_power);
            const Eigen::VectorXcd tau = update_quad_aux(iota, s.scalars, p.noise_power);
            const double after = surrogate_bits(s.scalars, iota, tau, p.noise_power);
            CHECK(after >= before - 1e-8);
        }
    }
}

TEST_CASE("precoder update") {
    SUBCASE("single user gets the matched-filter direction at full power") {
        Rng rng(5);
        const auto p = random_problem(rng, 4, 1, 2, 3, 2.5);
        const auto ris = random_ris(rng, p.layout);
        Eigen::VectorXd iota(1);
        iota << 3.0;
        Eigen::VectorXcd tau(1);
        tau << std::complex<double>(0.01, 0.02);  // small: the cap binds
        const Eigen::MatrixXcd w = update_precoder(p, ris, iota, tau);
        CHECK(w.squaredNorm() == doctest::Approx(2.5).epsilon(1e-7));
        const Eigen::VectorXcd g = effective_tx_channel(p, ris, 0);
        // collinearity: |<w, g>| = ||w|| ||g||
        CHECK(std::abs(g.dot(w.col(0))) ==
              doctest::Approx(w.col(0).norm() * g.norm()).epsilon(1e-9));
    }
    SUBCASE("active power constraint is met tightly") {
        Rng rng(6);
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = random_problem(rng, 3, 3, 3, 2, 5.0);
            const auto ris = random_ris(rng, p.layout);
            const auto w0 = testsupport::matched_filter_precoder(p, ris);
            const AuxState s = aux_for(p, ris, w0);
            const Eigen::MatrixXcd w = update_precoder(p, ris, s.rate_aux, s.quad_aux);
            CHECK(w.squaredNorm() <= 5.0 + 1e-7);
        }
    }
    SUBCASE("zero auxiliaries give the zero precoder") {
        Rng rng(9);
        const auto p = random_problem(rng, 3, 2, 2, 2);
        const auto ris = random_ris(rng, p.layout);
        const Eigen::MatrixXcd w = update_precoder(p, ris, Eigen::VectorXd::Zero(2),
                                                   Eigen::VectorXcd::Zero(2));
        CHECK(w.norm() == 0.0);
    }
    SUBCASE("update never lowers the surrogate") {
        Rng rng(10);
        for (int rep = 0; rep < 20; ++rep) {
            const auto p = random_problem(rng, 3, 3, 3, 2);
            const auto ris = random_ris(rng, p.layout);
            const auto w0 = testsupport::matched_filter_precoder(p, ris);
            const AuxState s = aux_for(p, ris, w0);
            const double before = surrogate_bits(s.scalars, s.rate_aux, s.quad_aux,
                                                 p.noise_power);
            const Eigen::MatrixXcd w1 = update_precoder(p, ris, s.rate_aux, s.quad_aux);
            const EffectiveVectors eff(p, w1);
            const double after = surrogate_bits(effective_scalars(p, eff, ris), s.rate_aux,
                                                s.quad_aux, p.noise_power);
            CHECK(after >= before - 1e-8);
        }
    }
}

TEST_CASE("sector aggregates") {
    SUBCASE("single user, unit auxiliaries") {
        Rng rng(11);
        const auto p = random_problem(rng, 2, 1, 2, 2);
        const auto w = testsupport::matched_filter_precoder(
            p, RisConfiguration::equal_split(p.layout));
        const EffectiveVectors eff(p, w);
        Eigen::VectorXd iota = Eigen::VectorXd::Zero(1);
        Eigen::VectorXcd tau = Eigen::VectorXcd::Ones(1);
        const auto agg = sector_aggregates(p, eff, iota, tau);
        CHECK((agg.v_tilde[0] - eff.at(0, 0)).norm() < 1e-14);
        const Eigen::MatrixXcd expected = eff.at(0, 0) * eff.at(0, 0).adjoint();
        CHECK((agg.quad[0] - expected).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(agg.v_tilde[1].norm() == 0.0);  // no users in sector 2
    }
    SUBCASE("zero auxiliaries zero the aggregates") {
        Rng rng(12);
        const auto p = random_problem(rng, 2, 2, 2, 2);
        const auto w = testsupport::matched_filter_precoder(
            p, RisConfiguration::equal_split(p.layout));
        const EffectiveVectors eff(p, w);
        const auto agg = sector_aggregates(p, eff, Eigen::VectorXd::Zero(2),
                                           Eigen::VectorXcd::Zero(2));
        CHECK(agg.v_tilde[0].norm() == 0.0);
        CHECK(agg.quad[0].norm() == 0.0);
    }
    SUBCASE("quadratic aggregates are Hermitian positive semi-definite") {
        Rng rng(13);
        for (int rep = 0; rep < 10; ++rep) {
            const auto p = random_problem(rng, 3, 4, 2, 3);
            const auto ris = random_ris(rng, p.layout);
            const auto w = testsupport::matched_filter_precoder(p, ris);
            const AuxState s = aux_for(p, ris, w);
            const EffectiveVectors eff(p, w);
            const auto agg = sector_aggregates(p, eff, s.rate_aux, s.quad_aux);
            for (const auto& q : agg.quad) {
                CHECK((q - q.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q);
                CHECK(es.eigenvalues().minCoeff() >= -1e-10);
            }
        }
    }
}

TEST_CASE("cell coefficients") {
    SUBCASE("single-cell surface has no coupling term") {
        Rng rng(14);
        const auto p = random_problem(rng, 2, 2, 3, 1);
        const auto ris = random_ris(rng, p.layout);
        const auto w = testsupport::matched_filter_precoder(p, ris);
        const AuxState s = aux_for(p, ris, w);
        const EffectiveVectors eff(p, w);
        const auto agg = sector_aggregates(p, eff, s.rate_aux, s.quad_aux);
        const auto cc = cell_coefficients(p, agg, ris, 0);
        for (int l = 0; l < 3; ++l) {
            CHECK(std::abs(cc.chi(l) + agg.v_tilde[l](0)) < 1e-14);
            CHECK(cc.nu(l) == doctest::Approx(std::real(agg.quad[l](0, 0))).epsilon(1e-12));
            CHECK(cc.nu(l) >= 0.0);
        }
    }
    SUBCASE("cell objective delta matches the full objective delta") {
        Rng rng(15);
        for (int rep = 0; rep < 15; ++rep) {
            const auto p = random_problem(rng, 3, 4, 2, 3);
            auto ris = random_ris(rng, p.layout);
            const auto w = testsupport::matched_filter_precoder(p, ris);
            const AuxState s = aux_for(p, ris, w);
            const EffectiveVectors eff(p, w);
            const auto agg = sector_aggregates(p, eff, s.rate_aux, s.quad_aux);

            const int m0 = static_cast<int>(rng.uniform(0.0, p.layout.cells()));
            const auto cc = cell_coefficients(p, agg, ris, m0);
            const auto cell_cost = [&](const RisConfiguration& cfg) {
                double c = 0.0;
                for (int l = 0; l < p.layout.sectors(); ++l) {
                    const std::complex<double> phi = cfg.phi(p.layout.flat(l, m0));
                    c += cc.nu(l) * std::norm(phi) + 2.0 * std::real(std::conj(phi) * cc.chi(l));
                }
                return c;
            };

            const double obj_before = ris_objective(p, agg, ris);
            const double cost_before = cell_cost(ris);
            // move only this cell to a fresh random point
            Eigen::VectorXd amp(p.layout.sectors());
            for (int l = 0; l < p.layout.sectors(); ++l) amp(l) = std::abs(rng.normal()) + 0.01;
            amp /= amp.norm();
            for (int l = 0; l < p.layout.sectors(); ++l) {
                ris.set_continuous(p.layout.flat(l, m0), amp(l) * amp(l),
                                   rng.uniform(0.0, 2.0 * std::numbers::pi));
            }
            const double obj_after = ris_objective(p, agg, ris);
            const double cost_after = cell_cost(ris);
            CHECK(obj_after - obj_before ==
                  doctest::Approx(-(cost_after - cost_before)).epsilon(1e-10));
        }
    }
}

TEST_SUITE_END();
