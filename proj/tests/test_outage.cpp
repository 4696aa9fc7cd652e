#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sfncov/errors.hpp"
#include "sfncov/hypoexp.hpp"
#include "sfncov/montecarlo.hpp"
#include "sfncov/outage.hpp"
#include "sfncov/units.hpp"
#include "support/test_support.hpp"

using namespace sfncov;

TEST_CASE("noise-only single station reduces to 1 - e^-1") {
    // P d^-alpha G G = W and theta = 1 make the exponent exactly one.
    const Scenario s = testsup::noise_only_scenario(1.0, 1.0, watts_to_dbm(1.0));
    const auto result = outage_probability(s, 1.0);
    CHECK(result.branch == OutageBranch::noise_only);
    CHECK(result.probability == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("threshold limits and domain errors") {
    const Scenario s = testsup::urban_scenario();
    CHECK(outage_probability(s, 1e-12).probability < 1e-6);
    CHECK(outage_probability(s, 1e12).probability > 1.0 - 1e-6);
    CHECK_THROWS_AS(outage_probability(s, 0.0), DomainError);
    CHECK_THROWS_AS(outage_probability(s, -2.0), DomainError);
}

TEST_CASE("branch selection") {
    const Scenario urban = testsup::urban_scenario();
    CHECK(outage_probability(urban, 10.0).branch == OutageBranch::repeated_means);

    const Scenario two = urban.with_station_powers({10.0, 20.0, 0.0});
    CHECK(outage_probability(two, 10.0).branch == OutageBranch::distinct_means);

    const Scenario quiet = urban.with_interferer_density(0.0);
    CHECK(outage_probability(quiet, 10.0).branch == OutageBranch::noise_only);

    const Scenario dark = urban.with_station_powers({0.0, 0.0, 0.0});
    const auto degenerate = outage_probability(dark, 10.0);
    CHECK(degenerate.branch == OutageBranch::degenerate);
    CHECK(degenerate.probability == 1.0);

    CHECK(to_string(OutageBranch::repeated_means) ==
          doctest::String("repeated_means"));
}

TEST_CASE("distinct and repeated routes agree on strictly distinct means") {
    std::mt19937_64 rng(17);
    int checked = 0;
    while (checked < 60) {
        const Scenario s = testsup::random_scenario(rng);
        const auto spec = build_hypoexp_spec(s);
        bool distinct = true;
        for (int o : spec.multiplicities)
            if (o != 1) distinct = false;
        if (!distinct || s.interference().lambda_per_m2 == 0.0) continue;

        const auto params = LaplaceParams::from_scenario(s);
        std::uniform_real_distribution<double> theta_db(-10.0, 25.0);
        const double tog = db_to_linear(theta_db(rng)) / (s.g_s_tx() * s.g_rx());
        const double a = detail::outage_distinct_means(spec, params, tog, s.noise_w());
        const double b = detail::outage_repeated_means(spec, params, tog, s.noise_w());
        CHECK(std::fabs(a - b) < 1e-8);
        ++checked;
    }
}

TEST_CASE("perturbing one repeated mean barely moves the result") {
    const Scenario urban = testsup::urban_scenario();
    const Scenario nudged = urban.with_station_powers({30.0 * (1.0 + 1e-6), 30.0, 30.0});
    REQUIRE(outage_probability(nudged, 10.0).branch == OutageBranch::distinct_means);
    for (double theta_db = -10.0; theta_db <= 25.0; theta_db += 5.0) {
        const double theta = db_to_linear(theta_db);
        const double exact = outage_probability(urban, theta).probability;
        const double perturbed = outage_probability(nudged, theta).probability;
        CHECK(std::fabs(exact - perturbed) < 1e-4);
    }
}

TEST_CASE("noise-only branch equals the general branch with lambda -> 0") {
    // the repeated-means machinery with a zero-coefficient transform must
    // reproduce the plain hypoexponential CDF
    const Scenario quiet = testsup::urban_scenario().with_interferer_density(0.0);
    const auto spec = build_hypoexp_spec(quiet);
    const auto params = LaplaceParams::from_scenario(quiet);
    for (double theta : {0.5, 5.0, 50.0}) {
        const double tog = theta / (quiet.g_s_tx() * quiet.g_rx());
        const double general =
            detail::outage_repeated_means(spec, params, tog, quiet.noise_w());
        const double cdf = hypoexp_cdf(spec, tog * quiet.noise_w());
        CHECK(general == doctest::Approx(cdf).epsilon(1e-12));
    }
}

TEST_CASE("monotone in theta, lambda and station powers") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        const Scenario s = testsup::random_scenario(rng);

        double previous = 0.0;
        for (double theta_db = -12.0; theta_db <= 24.0; theta_db += 4.0) {
            const double p = outage_probability(s, db_to_linear(theta_db)).probability;
            CHECK(p >= previous - 1e-11);
            previous = p;
        }

        const double theta = 4.0;
        const double base = outage_probability(s, theta).probability;
        CHECK(outage_probability(s.with_interferer_density(
                                     s.interference().lambda_per_m2 * 2.0 + 1e-7),
                                 theta)
                  .probability >= base - 1e-11);

        std::vector<double> powers;
        for (const auto& st : s.sfn_stations()) powers.push_back(st.power_w);
        for (std::size_t i = 0; i < powers.size(); ++i) {
            auto boosted = powers;
            boosted[i] *= 2.0;
            CHECK(outage_probability(s.with_station_powers(boosted), theta).probability <=
                  base + 1e-11);
        }
    }
}

TEST_CASE("conditional-CDF estimator agrees with the fading simulation") {
    // Average the exact hypoexponential CDF over sampled interference
    // realizations; this uses none of the Laplace-transform machinery, yet
    // must estimate the same finite-field outage as the plain simulator.
    const Scenario s = testsup::urban_scenario(2e-6);
    const auto spec = build_hypoexp_spec(s);
    const double theta = db_to_linear(15.0);
    const double gain = s.g_s_tx() * s.g_rx();
    const double scale = s.g_i_tx() * s.g_rx() * s.interference().power_w;

    auto rng = substream_engine(55, 0);
    std::exponential_distribution<double> fading(1.0);
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double interference = 0.0;
        for (const auto& itf : sample_interferers(s.interference(), rng)) {
            const double alpha = itf.is_los ? s.alpha_los() : s.alpha_nlos();
            interference += fading(rng) * std::pow(itf.distance_m, -alpha);
        }
        const double p =
            hypoexp_cdf(spec, theta * (s.noise_w() + scale * interference) / gain);
        sum += p;
        sum_sq += p * p;
    }
    const double conditional = sum / n;
    const double conditional_se =
        std::sqrt(std::max(0.0, sum_sq / n - conditional * conditional) / n);

    const auto direct = estimate_outage(s, theta, {100000, 66, {}, 0});
    const double se = std::hypot(conditional_se, direct.std_error);
    CHECK(std::fabs(conditional - direct.mean) <= 3.5 * se);
}

TEST_CASE("upper-bounds the finite-field simulation") {
    const Scenario s = testsup::urban_scenario(2e-6);
    const double theta = db_to_linear(10.0);
    const double analytic = outage_probability(s, theta).probability;
    const auto mc = estimate_outage(s, theta, {20000, 77, {}, 0});
    CHECK(analytic >= mc.mean - 3.0 * mc.std_error);
    CHECK(analytic - mc.mean <= 0.15);
}

TEST_CASE("rate coverage endpoints and wiring") {
    const Scenario s = testsup::urban_scenario();
    CHECK(rate_coverage(s, 0.0) == 1.0);
    CHECK(rate_coverage(s, 1e18) == 0.0);
    CHECK_THROWS_AS(rate_coverage(s, -1.0), DomainError);

    for (double kappa : {1e6, 1e7, 3e7}) {
        const double theta =
            std::expm1(kappa / (s.rate_h() * s.bandwidth_hz()) * std::numbers::ln2) /
            s.rate_j();
        CHECK(rate_coverage(s, kappa) ==
              doctest::Approx(1.0 - outage_probability(s, theta).probability)
                  .epsilon(1e-14));
    }

    double previous = 1.0;
    for (double kappa = 0.0; kappa <= 4e7; kappa += 4e6) {
        const double rc = rate_coverage(s, kappa);
        CHECK(rc <= previous + 1e-12);
        previous = rc;
    }
}

TEST_CASE("omega derivative: order zero and the pure-noise reduction") {
    const auto params = LaplaceParams::from_scenario(testsup::urban_scenario());
    const double a = 0.7, b = 120.0;
    CHECK(omega_derivative(params, a, b, 0) ==
          doctest::Approx(std::exp(-a) * laplace_interference(params, b))
              .epsilon(1e-13));

    LaplaceParams off = params;
    off.c_los = off.c_nlos = 0.0;
    for (int n = 0; n <= 5; ++n) {
        CHECK(omega_derivative(off, a, b, n) ==
              doctest::Approx(std::pow(a, n) * std::exp(-a)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(omega_derivative(params, -1.0, b, 1), DomainError);
    CHECK_THROWS_AS(omega_derivative(params, a, b, -1), DomainError);
}

TEST_CASE("omega derivative matches central finite differences") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int it = 0; it < 40; ++it) {
        LaplaceParams params;
        params.alpha_los = 2.2 + 1.6 * unit(rng);
        params.alpha_nlos = 3.0 + 1.0 * unit(rng);
        params.c_los = 2.0 * unit(rng);
        params.c_nlos = 2.0 * unit(rng);
        const double a = 0.1 + 2.9 * unit(rng);
        const double b = 0.05 + 3.0 * unit(rng);

        auto f = [&](long double x) {
            return std::exp(-a * x -
                            params.c_los * std::pow(b * x, 2.0L / params.alpha_los) -
                            params.c_nlos * std::pow(b * x, 2.0L / params.alpha_nlos));
        };
        for (int order = 1; order <= 4; ++order) {
            const double fd = ((order & 1) ? -1.0 : 1.0) *
                              testsup::richardson_derivative(f, 1.0, order);
            const double exact = omega_derivative(params, a, b, order);
            CHECK(std::fabs(fd - exact) <= 1e-5 * std::fabs(exact));
        }
    }
}

TEST_CASE("omega derivatives are nonnegative moments") {
    // E[U^n e^-U] can never be negative, whatever the parameters
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        LaplaceParams params;
        params.alpha_los = 2.1 + 1.8 * unit(rng);
        params.alpha_nlos = 3.0 + 1.0 * unit(rng);
        params.c_los = 5.0 * unit(rng);
        params.c_nlos = 5.0 * unit(rng);
        const double a = 10.0 * unit(rng);
        const double b = 100.0 * unit(rng);
        const int order = static_cast<int>(unit(rng) * 6);
        CHECK(omega_derivative(params, a, b, order) >= -1e-12);
    }
}
