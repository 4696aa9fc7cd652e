#include "sfncov/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sfncov/errors.hpp"
#include "sfncov/montecarlo.hpp"
#include "sfncov/outage.hpp"

namespace sfncov {
namespace {

constexpr int population_size = 32;
constexpr int elite_count = 2;
constexpr int parent_pool = population_size / 4;
constexpr double sigma_anneal = 0.95;
constexpr double crossover_prob = 0.5;
constexpr double power_snap_rtol = 1e-6;
constexpr double constraint_slack = 1e-9;

using Genome = std::vector<double>;

void validate_problem(const PaProblem& problem) {
    if (!(problem.theta_hat > 0.0) || !std::isfinite(problem.theta_hat))
        throw DomainError("PA problem requires theta_hat > 0");
    if (!(problem.t_hat > 0.0 && problem.t_hat <= 1.0))
        throw DomainError("PA problem requires t_hat in (0, 1]");
    if (!(problem.p_max > 0.0) || !std::isfinite(problem.p_max))
        throw DomainError("PA problem requires p_max > 0");
}

double outage_at(const PaProblem& problem, const Genome& powers) {
    return outage_probability(problem.scenario.with_station_powers(powers),
                              problem.theta_hat)
        .probability;
}

// (total, peak, genes) ordering; total order so sorting is deterministic.
bool better(const Genome& a, const Genome& b) {
    double total_a = 0.0, total_b = 0.0, max_a = 0.0, max_b = 0.0;
    for (double p : a) { total_a += p; max_a = std::max(max_a, p); }
    for (double p : b) { total_b += p; max_b = std::max(max_b, p); }
    if (total_a != total_b) return total_a < total_b;
    if (max_a != max_b) return max_a < max_b;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void snap_small_powers(Genome& genome, double p_max) {
    for (double& p : genome)
        if (p < power_snap_rtol * p_max) p = 0.0;
}

// Pulls an infeasible candidate toward the all-max corner along the segment
// x + t (p_max - x); outage is non-increasing in t so bisection applies.
void repair(const PaProblem& problem, Genome& genome) {
    if (outage_at(problem, genome) <= problem.t_hat) return;
    double lo = 0.0, hi = 1.0;
    Genome probe(genome.size());
    auto blend = [&](double t) {
        for (std::size_t i = 0; i < genome.size(); ++i)
            probe[i] = genome[i] + t * (problem.p_max - genome[i]);
        return probe;
    };
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (outage_at(problem, blend(mid)) <= problem.t_hat)
            hi = mid;
        else
            lo = mid;
    }
    genome = blend(hi);
}

PaSolution finish(const PaProblem& problem, Genome genome) {
    Genome snapped = genome;
    snap_small_powers(snapped, problem.p_max);
    double achieved = outage_at(problem, snapped);
    if (achieved > problem.t_hat + constraint_slack) {
        // Snapping crossed the constraint margin; keep the unsnapped powers.
        snapped = genome;
        achieved = outage_at(problem, snapped);
    }
    PaSolution sol;
    sol.powers = std::move(snapped);
    sol.total_power = 0.0;
    for (double p : sol.powers) sol.total_power += p;
    sol.achieved_outage = achieved;
    sol.feasible = achieved <= problem.t_hat + constraint_slack;
    return sol;
}

} // namespace

bool check_feasibility(const PaProblem& problem) {
    validate_problem(problem);
    const Genome maxed(problem.scenario.sfn_stations().size(), problem.p_max);
    return outage_at(problem, maxed) <= problem.t_hat;
}

PaSolution solve_uniform_bisection(const PaProblem& problem) {
    if (!check_feasibility(problem))
        throw InfeasibleError("outage target unreachable even at p_max on every station");
    const std::size_t m = problem.scenario.sfn_stations().size();

    auto outage_uniform = [&](double p) {
        return outage_at(problem, Genome(m, p));
    };

    double hi = problem.p_max;
    if (outage_uniform(0.0) <= problem.t_hat) {
        hi = 0.0;
    } else {
        // terminate on width relative to the answer, not to p_max; the
        // optimal power can sit many decades below the cap
        double lo = 0.0;
        for (int it = 0; it < 120 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (outage_uniform(mid) <= problem.t_hat)
                hi = mid;
            else
                lo = mid;
        }
    }
    return finish(problem, Genome(m, hi));
}

PaSolution solve_evolutionary(const PaProblem& problem, std::uint64_t budget,
                              std::uint64_t seed) {
    validate_problem(problem);
    if (budget < population_size)
        throw DomainError("evolutionary budget must cover at least one population");
    if (!check_feasibility(problem))
        throw InfeasibleError("outage target unreachable even at p_max on every station");

    const std::size_t m = problem.scenario.sfn_stations().size();
    const PaSolution uniform = solve_uniform_bisection(problem);

    std::mt19937_64 rng = substream_engine(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Genome> population;
    population.reserve(population_size);
    population.push_back(uniform.powers);
    while (population.size() < population_size) {
        Genome g(m);
        for (double& p : g) p = unit(rng) * problem.p_max;
        snap_small_powers(g, problem.p_max);
        repair(problem, g);
        population.push_back(std::move(g));
    }

    const std::uint64_t generations = budget / population_size;
    double sigma = 0.1 * problem.p_max;
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::uint64_t gen = 1; gen < generations; ++gen) {
        std::sort(population.begin(), population.end(), better);

        std::vector<Genome> offspring;
        offspring.reserve(population_size);
        for (int e = 0; e < elite_count; ++e) offspring.push_back(population[e]);

        std::uniform_int_distribution<int> pick(0, parent_pool - 1);
        while (offspring.size() < population_size) {
            const Genome& pa = population[pick(rng)];
            const Genome& pb = population[pick(rng)];
            Genome child(m);
            for (std::size_t i = 0; i < m; ++i)
                child[i] = unit(rng) < crossover_prob ? pa[i] : pb[i];
            for (double& p : child) {
                p += sigma * gauss(rng);
                p = std::clamp(p, 0.0, problem.p_max);
            }
            snap_small_powers(child, problem.p_max);
            repair(problem, child);
            offspring.push_back(std::move(child));
        }
        population = std::move(offspring);
        sigma *= sigma_anneal;
    }

    std::sort(population.begin(), population.end(), better);
    return finish(problem, population.front());
}

std::vector<PaSweepPoint> sweep_pa(const PaProblem& base, SweepAxis axis,
                                   std::span<const double> values,
                                   PaSolver solver, std::uint64_t budget,
                                   std::uint64_t seed) {
    validate_problem(base);
    if (values.empty())
        throw DomainError("sweep_pa requires a non-empty axis");

    std::vector<PaSweepPoint> table;
    table.reserve(values.size());
    for (double v : values) {
        PaProblem point = base;
        if (axis == SweepAxis::theta)
            point.theta_hat = v;
        else
            point.scenario = base.scenario.with_interferer_density(v);

        PaSweepPoint row;
        row.theta_hat = point.theta_hat;
        row.lambda_per_m2 = point.scenario.interference().lambda_per_m2;
        if (!check_feasibility(point)) {
            row.solution.powers.clear();
            row.solution.total_power = std::numeric_limits<double>::quiet_NaN();
            const Genome maxed(point.scenario.sfn_stations().size(), point.p_max);
            row.solution.achieved_outage = outage_at(point, maxed);
            row.solution.feasible = false;
        } else if (solver == PaSolver::bisection) {
            row.solution = solve_uniform_bisection(point);
        } else {
            row.solution = solve_evolutionary(point, budget, seed);
        }
        table.push_back(std::move(row));
    }
    return table;
}

} // namespace sfncov
