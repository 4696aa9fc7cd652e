#include "sfncov/laplace.hpp"

#include <cmath>
#include <numbers>

#include "sfncov/errors.hpp"

namespace sfncov {
namespace {

double exponent_coefficient(double lambda, double effective_power, double alpha) {
    if (lambda == 0.0) return 0.0;
    const double pi = std::numbers::pi;
    return 2.0 * lambda * pi * pi * std::pow(effective_power, 2.0 / alpha) /
           (alpha * std::sin(2.0 * pi / alpha));
}

} // namespace

LaplaceParams LaplaceParams::from_scenario(const Scenario& scenario) {
    const auto& field = scenario.interference();
    const double effective_power = scenario.g_i_tx() * scenario.g_rx() * field.power_w;
    LaplaceParams p;
    p.alpha_los = scenario.alpha_los();
    p.alpha_nlos = scenario.alpha_nlos();
    p.c_los = exponent_coefficient(field.lambda_los(), effective_power, p.alpha_los);
    p.c_nlos = exponent_coefficient(field.lambda_nlos(), effective_power, p.alpha_nlos);
    return p;
}

double log_laplace_interference(const LaplaceParams& params, double s) {
    if (!(s >= 0.0))
        throw DomainError("laplace_interference requires s >= 0");
    if (s == 0.0) return 0.0;
    double log_value = 0.0;
    if (params.c_los > 0.0)
        log_value -= params.c_los * std::pow(s, 2.0 / params.alpha_los);
    if (params.c_nlos > 0.0)
        log_value -= params.c_nlos * std::pow(s, 2.0 / params.alpha_nlos);
    return log_value;
}

double laplace_interference(const LaplaceParams& params, double s) {
    return std::exp(log_laplace_interference(params, s));
}

} // namespace sfncov
