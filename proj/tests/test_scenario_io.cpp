#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sfncov/errors.hpp"
#include "sfncov/scenario_io.hpp"
#include "support/test_support.hpp"

using namespace sfncov;

namespace {

const char* sample_json = R"({
  "sfn_stations": [
    {"x_m": -300.0, "y_m": 0.0, "power_w": 30.0},
    {"x_m": 300.0, "y_m": 0.0, "power_w": 30.0},
    {"x_m": 0.0, "y_m": 200.0, "power_w": 30.0}
  ],
  "interference": {"lambda_per_m2": 2e-6, "p_los": 0.2, "power_w": 10.0, "radius_m": 1000.0},
  "gains_db": {"sfn_tx": 20.0, "interferer_tx": 7.0, "rx": 10.0},
  "path_loss": {"alpha_los": 2.5, "alpha_nlos": 3.5},
  "noise": {"temperature_k": 290.0, "from_bandwidth": true},
  "rate": {"bandwidth_hz": 5e7, "h": 0.17, "j": 0.06}
})";

} // namespace

TEST_CASE("parses a full scenario") {
    const ScenarioConfig cfg = parse_scenario_json(sample_json);
    CHECK(cfg == testsup::urban_config(2e-6));
    const Scenario s = Scenario::from_config(cfg);
    CHECK(s.noise_w() == doctest::Approx(2.00194105e-13).epsilon(1e-8));
}

TEST_CASE("parses dbm noise") {
    std::string text = sample_json;
    const auto pos = text.find("\"noise\"");
    text = text.substr(0, pos) +
           "\"noise\": {\"dbm\": -96.0},\n  " + text.substr(text.find("\"rate\""));
    const ScenarioConfig cfg = parse_scenario_json(text);
    CHECK(cfg.noise.kind == NoiseSpec::Kind::dbm);
    CHECK(cfg.noise.value == -96.0);
}

TEST_CASE("rejects malformed input with the parameter named") {
    CHECK_THROWS_WITH_AS(parse_scenario_json("not json"),
                         doctest::Contains("does not parse"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_scenario_json("[1, 2]"),
                         doctest::Contains("must be an object"), ConfigError);

    std::string text = sample_json;
    text.replace(text.find("\"p_los\""), 7, "\"p_loss\"");
    CHECK_THROWS_WITH_AS(parse_scenario_json(text), doctest::Contains("p_loss"),
                         ConfigError);

    text = sample_json;
    text.replace(text.find("\"rate\""), 6, "\"rates\"");
    CHECK_THROWS_WITH_AS(parse_scenario_json(text), doctest::Contains("rates"),
                         ConfigError);

    text = sample_json;
    text.replace(text.find("0.17"), 4, "\"hi\"");
    CHECK_THROWS_WITH_AS(parse_scenario_json(text), doctest::Contains("rate.h"),
                         ConfigError);

    text = sample_json;
    text.replace(text.find("\"from_bandwidth\": true"), 22, "\"from_bandwidth\": false");
    CHECK_THROWS_AS(parse_scenario_json(text), ConfigError);
}

TEST_CASE("serialization round-trips exactly") {
    const ScenarioConfig cfg = parse_scenario_json(sample_json);
    const std::string text = scenario_config_to_json(cfg);
    const ScenarioConfig again = parse_scenario_json(text);
    CHECK(cfg == again);
    CHECK(scenario_config_to_json(again) == text);

    // and through the dbm noise form
    ScenarioConfig dbm_cfg = cfg;
    dbm_cfg.noise = {NoiseSpec::Kind::dbm, -96.98547};
    const ScenarioConfig dbm_again =
        parse_scenario_json(scenario_config_to_json(dbm_cfg));
    CHECK(dbm_cfg == dbm_again);
}

TEST_CASE("file round trip preserves the scenario") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "sfncov_io_test.json";
    {
        std::ofstream out(path);
        out << sample_json;
    }
    const Scenario loaded = load_scenario(path);
    const auto copy = dir / "sfncov_io_test_copy.json";
    save_scenario(loaded, copy);
    const Scenario reloaded = load_scenario(copy);
    CHECK(loaded == reloaded);
    std::filesystem::remove(path);
    std::filesystem::remove(copy);

    CHECK_THROWS_AS(load_scenario(dir / "sfncov_does_not_exist.json"), ConfigError);
}

TEST_CASE("overrides rewrite scalars in place") {
    std::string text = apply_scenario_overrides(
        sample_json, {{"interference.lambda_per_m2", "3e-6"},
                      {"sfn_stations.1.power_w", "12.5"},
                      {"rate.h", "0.2"}});
    const ScenarioConfig cfg = parse_scenario_json(text);
    CHECK(cfg.interference.lambda_per_m2 == 3e-6);
    CHECK(cfg.sfn_stations[1].power_w == 12.5);
    CHECK(cfg.rate.h == 0.2);

    CHECK_THROWS_WITH_AS(
        apply_scenario_overrides(sample_json, {{"interference.lambda", "1"}}),
        doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_AS(
        apply_scenario_overrides(sample_json, {{"sfn_stations.9.power_w", "1"}}),
        ConfigError);
    CHECK_THROWS_AS(apply_scenario_overrides(sample_json, {{"rate.h", "fast"}}),
                    ConfigError);
    CHECK_THROWS_AS(apply_scenario_overrides(sample_json, {{"rate", "1.0"}}),
                    ConfigError);
    CHECK_THROWS_AS(
        apply_scenario_overrides(sample_json, {{"noise.from_bandwidth", "3"}}),
        ConfigError);
}
