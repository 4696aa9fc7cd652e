#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sfncov/scenario.hpp"

namespace sfncov {

struct SimConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    // Overrides the scenario's interference radius when set.
    std::optional<double> radius_m;
    // 0 means use all hardware threads. Estimates are bit-identical for a
    // fixed seed no matter how many workers run.
    unsigned max_threads = 0;
};

struct SimEstimate {
    double mean;
    double std_error;  // binomial, sqrt(mean (1 - mean) / trials)
    std::uint64_t trials;
};

struct Interferer {
    double distance_m;
    bool is_los;
};

// Engine for one deterministic substream of a seed. Trials are partitioned
// into fixed-size chunks and chunk c always draws from
// substream_engine(seed, c), which is what makes parallel runs reproduce
// serial ones.
std::mt19937_64 substream_engine(std::uint64_t seed, std::uint64_t stream);

// One PPP realization on the disk of field.radius_m: Poisson count, uniform
// positions, independent LOS thinning. Distances are to the origin.
std::vector<Interferer> sample_interferers(const InterferenceField& field,
                                           std::mt19937_64& rng);

// SINR for fixed fading draws; the deterministic part of one trial.
// sfn_fading has one entry per station, interferer_fading one per interferer.
double sinr_from_draws(const Scenario& scenario,
                       std::span<const double> sfn_fading,
                       std::span<const Interferer> interferers,
                       std::span<const double> interferer_fading);

// One full trial: Rayleigh fading (unit-mean exponential) for every station,
// a fresh PPP realization, fading per interferer.
double simulate_sinr_once(const Scenario& scenario, std::mt19937_64& rng);

// Fraction of trials with SINR < theta. Deterministic per
// (seed, trials, scenario, theta).
SimEstimate estimate_outage(const Scenario& scenario, double theta,
                            const SimConfig& config);

// Fraction of trials with h * bandwidth * log2(1 + j * SINR) > kappa.
SimEstimate estimate_rate_coverage(const Scenario& scenario, double kappa,
                                   const SimConfig& config);

// Field radius that keeps the finite-radius truncation error at epsilon:
// epsilon^(-1/(alpha_los - 1)). Requires alpha_los > 1 and epsilon in (0, 1].
double choose_radius(double alpha_los, double epsilon);

} // namespace sfncov
