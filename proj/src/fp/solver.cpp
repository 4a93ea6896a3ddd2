#include "bdris/fp/solver.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "bdris/fp/cell_solver.hpp"
#include "bdris/fp/quantize.hpp"

namespace bdris::fp {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double denom(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& noise_power, int k) {
    return scalars.row(k).squaredNorm() + noise_power(k);
}

}  // namespace

SumRateProblem make_problem(const SectorLayout& layout, const ChannelRealization& channels,
                            const std::vector<int>& user_sector_1based,
                            const Eigen::VectorXd& noise_power, double power_budget) {
    const auto users = static_cast<int>(channels.user_channel.size());
    if (static_cast<int>(user_sector_1based.size()) != users || noise_power.size() != users) {
        throw std::invalid_argument("make_problem: per-user field size mismatch");
    }
    SumRateProblem p{layout, channels.tx_channel, {}, {}, noise_power, power_budget};
    p.user_channel.reserve(static_cast<std::size_t>(users));
    p.user_sector0.reserve(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const int sector = user_sector_1based[ks];
        if (sector < 1 || sector > layout.sectors()) {
            throw std::invalid_argument("make_problem: user sector outside layout");
        }
        p.user_channel.push_back(std::sqrt(1.0 / channels.path_loss[ks]) *
                                 channels.user_channel[ks]);
        p.user_sector0.push_back(sector - 1);
    }
    return p;
}

EffectiveVectors::EffectiveVectors(const SumRateProblem& problem,
                                   const Eigen::MatrixXcd& precoder)
    : users_(problem.users()) {
    const int K = users_;
    if (precoder.rows() != problem.tx_antennas() || precoder.cols() != K) {
        throw std::invalid_argument("EffectiveVectors: precoder shape mismatch");
    }
    std::vector<Eigen::VectorXcd> excited(static_cast<std::size_t>(K));
    for (int p = 0; p < K; ++p) {
        excited[static_cast<std::size_t>(p)] = problem.tx_channel * precoder.col(p);
    }
    v_.reserve(static_cast<std::size_t>(K) * K);
    for (int k = 0; k < K; ++k) {
        const auto& h = problem.user_channel[static_cast<std::size_t>(k)];
        for (int p = 0; p < K; ++p) {
            v_.push_back(h.cwiseProduct(excited[static_cast<std::size_t>(p)].conjugate()));
        }
    }
}

Eigen::MatrixXcd effective_scalars(const SumRateProblem& problem, const EffectiveVectors& eff,
                                   const RisConfiguration& ris) {
    const int K = problem.users();
    Eigen::MatrixXcd scalars(K, K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd phi =
            ris.sector_phi(problem.layout, problem.user_sector0[static_cast<std::size_t>(k)]);
        for (int p = 0; p < K; ++p) {
            scalars(k, p) = eff.at(k, p).dot(phi);
        }
    }
    return scalars;
}

Eigen::VectorXd sinr_values(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& noise_power) {
    const auto K = scalars.rows();
    Eigen::VectorXd sinr(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double signal = std::norm(scalars(k, k));
        sinr(k) = signal / (denom(scalars, noise_power, static_cast<int>(k)) - signal);
    }
    return sinr;
}

double sum_rate_from_scalars(const Eigen::MatrixXcd& scalars,
                             const Eigen::VectorXd& noise_power) {
    const Eigen::VectorXd sinr = sinr_values(scalars, noise_power);
    double rate = 0.0;
    for (Eigen::Index k = 0; k < sinr.size(); ++k) rate += std::log2(1.0 + sinr(k));
    return rate;
}

double sum_rate(const SumRateProblem& problem, const RisConfiguration& ris,
                const Eigen::MatrixXcd& precoder) {
    const EffectiveVectors eff(problem, precoder);
    return sum_rate_from_scalars(effective_scalars(problem, eff, ris), problem.noise_power);
}

Eigen::VectorXd update_rate_aux(const Eigen::MatrixXcd& scalars,
                                const Eigen::VectorXd& noise_power) {
    return sinr_values(scalars, noise_power);
}

Eigen::VectorXcd update_quad_aux(const Eigen::VectorXd& rate_aux,
                                 const Eigen::MatrixXcd& scalars,
                                 const Eigen::VectorXd& noise_power) {
    const auto K = scalars.rows();
    Eigen::VectorXcd tau(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        tau(k) = std::sqrt(1.0 + rate_aux(k)) * scalars(k, k) /
                 denom(scalars, noise_power, static_cast<int>(k));
    }
    return tau;
}

double surrogate_bits(const Eigen::MatrixXcd& scalars, const Eigen::VectorXd& rate_aux,
                      const Eigen::VectorXcd& quad_aux, const Eigen::VectorXd& noise_power) {
    double value = 0.0;
    for (Eigen::Index k = 0; k < scalars.rows(); ++k) {
        const double quad = std::norm(quad_aux(k)) * denom(scalars, noise_power, static_cast<int>(k));
        const double cross = 2.0 * std::sqrt(1.0 + rate_aux(k)) *
                             std::real(std::conj(quad_aux(k)) * scalars(k, k));
        value += std::log1p(rate_aux(k)) - rate_aux(k) + cross - quad;
    }
    return value / kLn2;
}

Eigen::VectorXcd effective_tx_channel(const SumRateProblem& problem, const RisConfiguration& ris,
                                      int user) {
    const int l0 = problem.user_sector0[static_cast<std::size_t>(user)];
    const Eigen::VectorXcd phi = ris.sector_phi(problem.layout, l0);
    const Eigen::VectorXcd weighted =
        phi.conjugate().cwiseProduct(problem.user_channel[static_cast<std::size_t>(user)]);
    return problem.tx_channel.adjoint() * weighted;
}

Eigen::MatrixXcd update_precoder(const SumRateProblem& problem, const RisConfiguration& ris,
                                 const Eigen::VectorXd& rate_aux,
                                 const Eigen::VectorXcd& quad_aux) {
    const int N = problem.tx_antennas();
    const int K = problem.users();
    Eigen::MatrixXcd quad = Eigen::MatrixXcd::Zero(N, N);
    Eigen::MatrixXcd rhs(N, K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd g = effective_tx_channel(problem, ris, k);
        quad.noalias() += std::norm(quad_aux(k)) * (g * g.adjoint());
        rhs.col(k) = std::sqrt(1.0 + rate_aux(k)) * quad_aux(k) * g;
    }
    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) {
        return Eigen::MatrixXcd::Zero(N, K);  // no gradient anywhere: degenerate channel
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(quad);
    Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXcd rot = es.eigenvectors().adjoint() * rhs;  // rhs in eigenbasis

    Eigen::VectorXd row_mass(N);
    for (int i = 0; i < N; ++i) row_mass(i) = rot.row(i).squaredNorm();

    const double budget = problem.power_budget;
    const double eval_floor = 1e-12 * std::max(evals.maxCoeff(), 1.0);

    const auto norm_sq = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < N; ++i) {
            const double d = evals(i) + mu;
            s += row_mass(i) / (d * d);
        }
        return s;
    };

    // Unconstrained solution, dropping the null space of the quadratic term.
    bool interior = true;
    double interior_norm = 0.0;
    for (int i = 0; i < N; ++i) {
        if (evals(i) > eval_floor) {
            interior_norm += row_mass(i) / (evals(i) * evals(i));
        } else if (row_mass(i) > 1e-24 * rhs_norm * rhs_norm) {
            interior = false;  // gradient along a null direction: cap always binds
            break;
        }
    }

    double mu = 0.0;
    if (interior && interior_norm <= budget) {
        Eigen::MatrixXcd scaled = rot;
        for (int i = 0; i < N; ++i) {
            scaled.row(i) *= evals(i) > eval_floor ? 1.0 / evals(i) : 0.0;
        }
        return es.eigenvectors() * scaled;
    }

    double lo = 0.0;
    double hi = rhs_norm / std::sqrt(budget);  // norm_sq(hi) <= budget
    for (int it = 0; it < 200; ++it) {
        mu = 0.5 * (lo + hi);
        const double s = norm_sq(mu);
        if (std::abs(s - budget) <= 1e-10 * budget || hi - lo < 1e-16 * hi) break;
        if (s > budget) {
            lo = mu;
        } else {
            hi = mu;
        }
    }
    Eigen::MatrixXcd scaled = rot;
    for (int i = 0; i < N; ++i) scaled.row(i) /= evals(i) + mu;
    return es.eigenvectors() * scaled;
}

SectorAggregates sector_aggregates(const SumRateProblem& problem, const EffectiveVectors& eff,
                                   const Eigen::VectorXd& rate_aux,
                                   const Eigen::VectorXcd& quad_aux) {
    const int L = problem.layout.sectors();
    const int M = problem.layout.cells();
    const int K = problem.users();
    SectorAggregates agg;
    agg.v_tilde.assign(static_cast<std::size_t>(L), Eigen::VectorXcd::Zero(M));
    agg.quad.assign(static_cast<std::size_t>(L), Eigen::MatrixXcd::Zero(M, M));
    for (int k = 0; k < K; ++k) {
        const auto l = static_cast<std::size_t>(problem.user_sector0[static_cast<std::size_t>(k)]);
        agg.v_tilde[l] += std::sqrt(1.0 + rate_aux(k)) * quad_aux(k) * eff.at(k, k);
        const double weight = std::norm(quad_aux(k));
        if (weight == 0.0) continue;
        for (int p = 0; p < K; ++p) {
            agg.quad[l].noalias() += weight * (eff.at(k, p) * eff.at(k, p).adjoint());
        }
    }
    return agg;
}

double ris_objective(const SumRateProblem& problem, const SectorAggregates& agg,
                     const RisConfiguration& ris) {
    double value = 0.0;
    for (int l0 = 0; l0 < problem.layout.sectors(); ++l0) {
        const auto ls = static_cast<std::size_t>(l0);
        const Eigen::VectorXcd phi = ris.sector_phi(problem.layout, l0);
        value += 2.0 * std::real(agg.v_tilde[ls].dot(phi));
        value -= std::real(phi.dot(agg.quad[ls] * phi));
    }
    return value;
}

CellCoefficients cell_coefficients(const SumRateProblem& problem, const SectorAggregates& agg,
                                   const RisConfiguration& ris, int cell0) {
    const int L = problem.layout.sectors();
    CellCoefficients cc;
    cc.chi.resize(L);
    cc.nu.resize(L);
    for (int l0 = 0; l0 < L; ++l0) {
        const auto ls = static_cast<std::size_t>(l0);
        const Eigen::VectorXcd phi = ris.sector_phi(problem.layout, l0);
        const std::complex<double> coupled = agg.quad[ls].row(cell0) * phi;
        const std::complex<double> self = agg.quad[ls](cell0, cell0) * phi(cell0);
        cc.chi(l0) = coupled - self - agg.v_tilde[ls](cell0);
        cc.nu(l0) = std::max(0.0, std::real(agg.quad[ls](cell0, cell0)));
    }
    return cc;
}

Eigen::VectorXd continuous_phase_update(const CellCoefficients& cc,
                                        const Eigen::VectorXd& previous_theta) {
    Eigen::VectorXd theta(cc.chi.size());
    for (Eigen::Index l = 0; l < cc.chi.size(); ++l) {
        theta(l) = std::abs(cc.chi(l)) > 0.0
                       ? canonical_phase(std::arg(cc.chi(l)) + std::numbers::pi)
                       : previous_theta(l);
    }
    return theta;
}

namespace {

Eigen::VectorXd cell_previous_theta(const SumRateProblem& problem, const RisConfiguration& ris,
                                    int cell0) {
    const int L = problem.layout.sectors();
    Eigen::VectorXd theta(L);
    for (int l0 = 0; l0 < L; ++l0) theta(l0) = ris.theta(problem.layout.flat(l0, cell0));
    return theta;
}

bool objective_stalled(double current, double previous, double tol) {
    return std::abs(current - previous) <= tol * std::max(1.0, std::abs(current));
}

}  // namespace

RisConfiguration design_ris_continuous(const SumRateProblem& problem,
                                       const SectorAggregates& agg, RisConfiguration ris,
                                       const RisDesignOptions& opts) {
    const int L = problem.layout.sectors();
    const int M = problem.layout.cells();
    double previous = ris_objective(problem, agg, ris);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        for (int m0 = 0; m0 < M; ++m0) {
            const CellCoefficients cc = cell_coefficients(problem, agg, ris, m0);
            const Eigen::VectorXd theta =
                continuous_phase_update(cc, cell_previous_theta(problem, ris, m0));
            CellAmplitudeSolution sol =
                solve_cell_amplitudes(cc.nu, cc.chi.cwiseAbs(), opts.secular_tol);
            sol.amplitude /= sol.amplitude.norm();  // exact unit cell sum on writeback
            for (int l0 = 0; l0 < L; ++l0) {
                ris.set_continuous(problem.layout.flat(l0, m0),
                                   sol.amplitude(l0) * sol.amplitude(l0), theta(l0));
            }
        }
        const double current = ris_objective(problem, agg, ris);
        if (objective_stalled(current, previous, opts.sweep_tol)) break;
        previous = current;
    }
    return ris;
}

RisConfiguration design_ris_discrete(const SumRateProblem& problem, const SectorAggregates& agg,
                                     RisConfiguration ris, const Codebook& cb,
                                     const RisDesignOptions& opts) {
    const int L = problem.layout.sectors();
    const int M = problem.layout.cells();
    double previous = ris_objective(problem, agg, ris);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        bool changed = false;
        for (int m0 = 0; m0 < M; ++m0) {
            const CellCoefficients cc = cell_coefficients(problem, agg, ris, m0);
            const Eigen::VectorXd theta_star =
                continuous_phase_update(cc, cell_previous_theta(problem, ris, m0));

            Eigen::VectorXd theta_q(L);
            Eigen::VectorXd lin(L);
            for (int l0 = 0; l0 < L; ++l0) {
                theta_q(l0) = quantize_phase(theta_star(l0), cb);
                lin(l0) = std::abs(cc.chi(l0)) *
                          std::cos(std::arg(cc.chi(l0)) - theta_q(l0));
            }
            // Quantized phases keep the linear term non-positive; the clamp
            // only absorbs rounding noise at the exact half-step tie.
            const Eigen::VectorXd chi_eff = (-lin.array()).max(0.0).matrix();

            CellAmplitudeSolution sol = solve_cell_amplitudes(cc.nu, chi_eff, opts.secular_tol);
            sol.amplitude /= sol.amplitude.norm();
            std::vector<int> levels =
                quantize_amplitudes(sol.amplitude.array().square().matrix(), cb);
            repair_cell_amplitudes(levels, cc.nu, lin, cb);

            for (int l0 = 0; l0 < L; ++l0) {
                const int i = problem.layout.flat(l0, m0);
                const int level = levels[static_cast<std::size_t>(l0)];
                if (ris.grid_level(i) != level || ris.theta(i) != theta_q(l0)) changed = true;
                ris.set_discrete(i, level, theta_q(l0), cb);
            }
        }
        const double current = ris_objective(problem, agg, ris);
        if (!changed) break;
        if (objective_stalled(current, previous, opts.sweep_tol)) break;
        previous = current;
    }
    return ris;
}

SolveResult solve(const SumRateProblem& problem, const SolveOptions& opts) {
    if (opts.mode == RisMode::Discrete && !opts.codebook.has_value()) {
        throw std::invalid_argument("solve: discrete mode needs a codebook");
    }
    const auto start = std::chrono::steady_clock::now();
    const int N = problem.tx_antennas();
    const int K = problem.users();

    RisConfiguration ris = RisConfiguration::equal_split(problem.layout);

    // Matched-filter start: each stream along its effective channel, equal
    // per-stream power filling the budget.
    Eigen::MatrixXcd precoder = Eigen::MatrixXcd::Zero(N, K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd g = effective_tx_channel(problem, ris, k);
        const double norm = g.norm();
        if (norm > 0.0) precoder.col(k) = std::sqrt(problem.power_budget / K) * g / norm;
    }

    SolveResult result{ris, precoder, {}};
    SolveReport& report = result.report;

    double previous_rate = sum_rate(problem, ris, precoder);
    for (int iter = 0; iter < opts.max_outer; ++iter) {
        IterationTrace trace;

        EffectiveVectors eff(problem, precoder);
        Eigen::MatrixXcd scalars = effective_scalars(problem, eff, ris);
        const Eigen::VectorXd rate_aux = update_rate_aux(scalars, problem.noise_power);
        const Eigen::VectorXcd quad_aux = update_quad_aux(rate_aux, scalars, problem.noise_power);
        trace.surrogate_aux = surrogate_bits(scalars, rate_aux, quad_aux, problem.noise_power);

        precoder = update_precoder(problem, ris, rate_aux, quad_aux);
        eff = EffectiveVectors(problem, precoder);
        scalars = effective_scalars(problem, eff, ris);
        trace.surrogate_precoder =
            surrogate_bits(scalars, rate_aux, quad_aux, problem.noise_power);

        const SectorAggregates agg = sector_aggregates(problem, eff, rate_aux, quad_aux);
        ris = opts.mode == RisMode::Continuous
                  ? design_ris_continuous(problem, agg, std::move(ris), opts.ris)
                  : design_ris_discrete(problem, agg, std::move(ris), *opts.codebook, opts.ris);
        scalars = effective_scalars(problem, eff, ris);
        trace.surrogate_ris = surrogate_bits(scalars, rate_aux, quad_aux, problem.noise_power);
        trace.sum_rate = sum_rate_from_scalars(scalars, problem.noise_power);

        report.trajectory.push_back(trace);
        report.iterations = iter + 1;
        if (std::abs(trace.sum_rate - previous_rate) <
            opts.rate_tol * std::max(previous_rate, 1e-12)) {
            report.converged = true;
            previous_rate = trace.sum_rate;
            break;
        }
        previous_rate = trace.sum_rate;
    }

    result.ris = ris;
    result.precoder = precoder;
    report.final_sum_rate = previous_rate;
    report.ris_residual = validate_continuous(ris, problem.layout);
    report.power_slack = problem.power_budget - precoder.squaredNorm();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace bdris::fp
