#include "sfncov/outage.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sfncov/errors.hpp"
#include "sfncov/hypoexp.hpp"
#include "survival_kernel.hpp"

namespace sfncov {

const char* to_string(OutageBranch branch) {
    switch (branch) {
    case OutageBranch::distinct_means: return "distinct_means";
    case OutageBranch::repeated_means: return "repeated_means";
    case OutageBranch::noise_only: return "noise_only";
    case OutageBranch::degenerate: return "degenerate";
    }
    return "unknown";
}

double omega_derivative(const LaplaceParams& params, double a_coeff,
                        double b_coeff, int order) {
    if (order < 0)
        throw DomainError("omega_derivative requires order >= 0");
    if (!(a_coeff >= 0.0) || !(b_coeff >= 0.0))
        throw DomainError("omega_derivative requires nonnegative coefficients");

    const double p_los = 2.0 / params.alpha_los;
    const double p_nlos = 2.0 / params.alpha_nlos;
    const double los_term = params.c_los == 0.0 ? 0.0
                            : params.c_los * std::pow(b_coeff, p_los);
    const double nlos_term = params.c_nlos == 0.0 ? 0.0
                             : params.c_nlos * std::pow(b_coeff, p_nlos);

    // g(x) = -a x - los_term x^p_los - nlos_term x^p_nlos around x = 1.
    const double g0 = a_coeff + los_term + nlos_term;
    if (!std::isfinite(g0) || g0 > 745.0) return 0.0;  // exp(-g0) underflows

    std::vector<double> f(order + 1);
    f[0] = std::exp(-g0);
    std::vector<double> g(order + 1, 0.0);
    double fall_los = 1.0, fall_nlos = 1.0;
    for (int r = 1; r <= order; ++r) {
        fall_los *= p_los - (r - 1);
        fall_nlos *= p_nlos - (r - 1);
        g[r] = -(r == 1 ? a_coeff : 0.0) - los_term * fall_los - nlos_term * fall_nlos;
    }
    for (int n = 1; n <= order; ++n) {
        double acc = 0.0;
        double binom = 1.0;  // C(n-1, i)
        for (int i = 0; i < n; ++i) {
            acc += binom * f[i] * g[n - i];
            binom = binom * (n - 1 - i) / (i + 1);
        }
        f[n] = acc;
    }
    return ((order & 1) ? -1.0 : 1.0) * f[order];
}

namespace detail {

double outage_repeated_means(const HypoexpSpec& spec, const LaplaceParams& params,
                             double theta_over_gain, double noise_w) {
    validate_spec(spec);
    const double survival = survival_sum(spec, [&](int k, int n) {
        const double inv_mu = 1.0 / spec.means[k];
        return omega_derivative(params, theta_over_gain * noise_w * inv_mu,
                                theta_over_gain * inv_mu, n);
    });
    return 1.0 - survival;
}

double outage_distinct_means(const HypoexpSpec& spec, const LaplaceParams& params,
                             double theta_over_gain, double noise_w) {
    validate_spec(spec);
    const int m = static_cast<int>(spec.means.size());
    for (int k = 0; k < m; ++k)
        if (spec.multiplicities[k] != 1)
            throw DomainError("distinct-means route needs all multiplicities equal to 1");

    // Means rescaled to geometric mean one; the weighted sum is invariant.
    double log_scale = 0.0;
    for (double mu : spec.means) log_scale += std::log(mu);
    log_scale /= m;
    std::vector<double> mu(m);
    for (int k = 0; k < m; ++k)
        mu[k] = std::exp(std::log(spec.means[k]) - log_scale);

    // survival = prod_j mu_j^-1 sum_k D_k L(B_k) with
    // D_k = mu_k exp(-A_k) prod_{j != k} (1/mu_j - 1/mu_k)^-1, accumulated in
    // log space with the sign tracked separately.
    std::vector<double> log_term(m), sign(m);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
        const double inv_mu_phys = 1.0 / spec.means[k];
        double lt = std::log(mu[k]) - theta_over_gain * noise_w * inv_mu_phys +
                    log_laplace_interference(params, theta_over_gain * inv_mu_phys);
        double sg = 1.0;
        for (int j = 0; j < m; ++j) {
            if (j == k) continue;
            const double d = 1.0 / mu[j] - 1.0 / mu[k];
            lt -= std::log(std::fabs(d));
            if (d < 0.0) sg = -sg;
        }
        log_term[k] = lt;
        sign[k] = sg;
        max_log = std::max(max_log, lt);
    }

    double log_pre = 0.0;
    for (int j = 0; j < m; ++j) log_pre -= std::log(mu[j]);

    double acc = 0.0;
    for (int k = 0; k < m; ++k)
        acc += sign[k] * std::exp(log_term[k] - max_log);
    const double survival = acc * std::exp(max_log + log_pre);
    return 1.0 - survival;
}

} // namespace detail

OutageResult outage_probability(const Scenario& scenario, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("outage_probability requires a finite theta > 0");

    bool any_power = false;
    for (const auto& st : scenario.sfn_stations())
        if (st.power_w > 0.0) any_power = true;
    if (!any_power) return {1.0, OutageBranch::degenerate};

    const HypoexpSpec spec = build_hypoexp_spec(scenario);
    const double theta_over_gain = theta / (scenario.g_s_tx() * scenario.g_rx());

    if (scenario.interference().lambda_per_m2 == 0.0) {
        return {hypoexp_cdf(spec, theta_over_gain * scenario.noise_w()),
                OutageBranch::noise_only};
    }

    const LaplaceParams params = LaplaceParams::from_scenario(scenario);
    bool all_single = true;
    for (int o : spec.multiplicities)
        if (o != 1) all_single = false;

    const double raw = all_single
        ? detail::outage_distinct_means(spec, params, theta_over_gain, scenario.noise_w())
        : detail::outage_repeated_means(spec, params, theta_over_gain, scenario.noise_w());
    return {detail::clamp_probability(raw, "outage_probability"),
            all_single ? OutageBranch::distinct_means : OutageBranch::repeated_means};
}

double rate_coverage(const Scenario& scenario, double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw DomainError("rate_coverage requires a finite kappa >= 0");
    if (kappa == 0.0) return 1.0;

    const double exponent = kappa / (scenario.rate_h() * scenario.bandwidth_hz());
    // Threshold beyond any representable SINR: coverage is zero.
    if (exponent * std::numbers::ln2 - std::log(scenario.rate_j()) > 700.0)
        return 0.0;
    const double theta = std::expm1(exponent * std::numbers::ln2) / scenario.rate_j();
    if (theta <= 0.0) return 1.0;  // kappa below floating-point resolution
    return 1.0 - outage_probability(scenario, theta).probability;
}

} // namespace sfncov
