#pragma once

#include "sfncov/scenario.hpp"

namespace sfncov {

// Exponent coefficients of the interference Laplace transform
//
//   E[exp(-s I)] = exp(-c_los * s^(2/alpha_los) - c_nlos * s^(2/alpha_nlos))
//
// for the infinite-radius PPP field with Rayleigh fading. Requires both
// path-loss exponents strictly above 2; at 2 the coefficients diverge.
struct LaplaceParams {
    double c_los = 0.0;
    double c_nlos = 0.0;
    double alpha_los = 3.0;
    double alpha_nlos = 3.0;

    static LaplaceParams from_scenario(const Scenario& scenario);
};

// E[exp(-s I)] for the aggregate interference power at the cluster center.
// Throws DomainError for s < 0.
double laplace_interference(const LaplaceParams& params, double s);

// log E[exp(-s I)]; safe against underflow for very large s.
double log_laplace_interference(const LaplaceParams& params, double s);

} // namespace sfncov
