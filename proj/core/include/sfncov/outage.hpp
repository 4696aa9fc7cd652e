#pragma once

#include "sfncov/laplace.hpp"
#include "sfncov/scenario.hpp"

namespace sfncov {

enum class OutageBranch {
    distinct_means,  // product form over strictly distinct means
    repeated_means,  // general derivative form
    noise_only,      // no interferers: plain hypoexponential CDF
    degenerate,      // nothing transmits: outage is certain
};

const char* to_string(OutageBranch branch);

struct OutageResult {
    double probability;
    OutageBranch branch;
};

// P[SINR < theta] at the cluster center, for the infinite-radius
// interference field. theta is linear. The raw closed-form value is sanity
// checked against [-1e-9, 1 + 1e-9] before clamping into [0, 1]; anything
// further out raises NumericalInstabilityError. Throws DomainError for
// theta <= 0.
OutageResult outage_probability(const Scenario& scenario, double theta);

// P[h * bandwidth * log2(1 + j * SINR) > kappa] with kappa in bit/s.
// kappa = 0 returns 1.
double rate_coverage(const Scenario& scenario, double kappa);

// E[U^order * exp(-U)] for U = a_coeff + b_coeff * I: the order-th
// derivative at x = 1 of exp(-a_coeff x) * E[exp(-b_coeff x I)], times
// (-1)^order. Computed by the exact Bell-polynomial recursion over the
// closed-form derivatives of the exponent, so no numeric differencing is
// involved.
double omega_derivative(const LaplaceParams& params, double a_coeff,
                        double b_coeff, int order);

namespace detail {

// The two algebraically equivalent outage routes, exposed unclamped so they
// can be cross-checked. theta_over_gain = theta / (g_s_tx * g_rx).
double outage_distinct_means(const HypoexpSpec& spec, const LaplaceParams& params,
                             double theta_over_gain, double noise_w);
double outage_repeated_means(const HypoexpSpec& spec, const LaplaceParams& params,
                             double theta_over_gain, double noise_w);

} // namespace detail

} // namespace sfncov
