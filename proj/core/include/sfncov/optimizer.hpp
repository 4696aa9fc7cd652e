#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfncov/scenario.hpp"

namespace sfncov {

// Minimize total transmit power subject to outage_probability(theta_hat)
// staying at or below t_hat, with every station power in [0, p_max].
// The station powers in `scenario` are placeholders; solvers treat them as
// the decision variables.
struct PaProblem {
    Scenario scenario;
    double theta_hat;  // linear SINR target
    double t_hat;      // outage target in (0, 1]
    double p_max;      // per-station cap, watts
};

struct PaSolution {
    std::vector<double> powers;  // per station, watts
    double total_power;
    double achieved_outage;  // analytic outage at the returned powers
    bool feasible;
};

// True iff the outage target is met with every station at p_max. Outage is
// non-increasing in each power, so the all-max point is the most favorable.
bool check_feasibility(const PaProblem& problem);

// Smallest common power p with the constraint satisfied under P_i = p for
// all i, found by bisection. Throws InfeasibleError when even p_max fails.
PaSolution solve_uniform_bisection(const PaProblem& problem);

// Population search over [0, p_max]^M. Infeasible candidates are repaired by
// scaling toward the all-max corner, which is monotone in the constraint.
// The uniform-bisection solution seeds the population, so the result never
// costs more than it. budget is the nominal evaluation count and must cover
// at least one population. Deterministic per seed.
PaSolution solve_evolutionary(const PaProblem& problem, std::uint64_t budget,
                              std::uint64_t seed);

enum class PaSolver { bisection, evolutionary };
enum class SweepAxis { theta, lambda };

struct PaSweepPoint {
    double theta_hat;       // linear
    double lambda_per_m2;
    PaSolution solution;
};

// One solve per axis value. Infeasible points are reported, not thrown:
// feasible = false, powers empty, total NaN, achieved_outage the value at
// the all-max corner.
std::vector<PaSweepPoint> sweep_pa(const PaProblem& base, SweepAxis axis,
                                   std::span<const double> values,
                                   PaSolver solver, std::uint64_t budget,
                                   std::uint64_t seed);

} // namespace sfncov
