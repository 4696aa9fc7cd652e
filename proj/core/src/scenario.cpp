#include "sfncov/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sfncov/errors.hpp"
#include "sfncov/units.hpp"

namespace sfncov {
namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::string num(double v) {
    return std::to_string(v);
}

} // namespace

int HypoexpSpec::total() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

Scenario Scenario::from_config(const ScenarioConfig& config) {
    require(!config.sfn_stations.empty(), "sfn_stations must contain at least one station");
    for (std::size_t i = 0; i < config.sfn_stations.size(); ++i) {
        const auto& st = config.sfn_stations[i];
        const std::string tag = "sfn_stations." + std::to_string(i);
        require(std::isfinite(st.x_m) && std::isfinite(st.y_m),
                tag + ": coordinates must be finite");
        require(std::isfinite(st.power_w) && st.power_w >= 0.0,
                tag + ".power_w must be >= 0, got " + num(st.power_w));
        require(std::hypot(st.x_m, st.y_m) > 0.0,
                tag + ": station sits exactly at the cluster center");
    }

    const auto& itf = config.interference;
    require(std::isfinite(itf.lambda_per_m2) && itf.lambda_per_m2 >= 0.0,
            "interference.lambda_per_m2 must be >= 0, got " + num(itf.lambda_per_m2));
    require(std::isfinite(itf.p_los) && itf.p_los >= 0.0 && itf.p_los <= 1.0,
            "interference.p_los must lie in [0, 1], got " + num(itf.p_los));
    require(std::isfinite(itf.power_w) && itf.power_w > 0.0,
            "interference.power_w must be > 0, got " + num(itf.power_w));
    require(std::isfinite(itf.radius_m) && itf.radius_m > 0.0,
            "interference.radius_m must be > 0, got " + num(itf.radius_m));

    require(std::isfinite(config.gains_db.sfn_tx), "gains_db.sfn_tx must be finite");
    require(std::isfinite(config.gains_db.interferer_tx),
            "gains_db.interferer_tx must be finite");
    require(std::isfinite(config.gains_db.rx), "gains_db.rx must be finite");

    // The Laplace-transform exponent carries sin(2 pi / alpha), which
    // vanishes at alpha = 2; only alpha > 2 keeps the transform finite.
    require(std::isfinite(config.path_loss.alpha_los) && config.path_loss.alpha_los > 2.0,
            "path_loss.alpha_los must be > 2, got " + num(config.path_loss.alpha_los));
    require(std::isfinite(config.path_loss.alpha_nlos) && config.path_loss.alpha_nlos > 2.0,
            "path_loss.alpha_nlos must be > 2, got " + num(config.path_loss.alpha_nlos));

    require(std::isfinite(config.rate.bandwidth_hz) && config.rate.bandwidth_hz > 0.0,
            "rate.bandwidth_hz must be > 0, got " + num(config.rate.bandwidth_hz));
    require(std::isfinite(config.rate.h) && config.rate.h > 0.0 && config.rate.h <= 1.0,
            "rate.h must lie in (0, 1], got " + num(config.rate.h));
    require(std::isfinite(config.rate.j) && config.rate.j > 0.0 && config.rate.j <= 1.0,
            "rate.j must lie in (0, 1], got " + num(config.rate.j));

    double noise_w = 0.0;
    switch (config.noise.kind) {
    case NoiseSpec::Kind::dbm:
        require(std::isfinite(config.noise.value), "noise.dbm must be finite");
        noise_w = dbm_to_watts(config.noise.value);
        break;
    case NoiseSpec::Kind::from_bandwidth:
        require(std::isfinite(config.noise.value) && config.noise.value > 0.0,
                "noise.temperature_k must be > 0, got " + num(config.noise.value));
        noise_w = thermal_noise_w(config.noise.value, config.rate.bandwidth_hz);
        break;
    }
    require(noise_w > 0.0, "noise power must be > 0");

    Scenario s;
    s.config_ = config;
    s.stations_.reserve(config.sfn_stations.size());
    for (const auto& st : config.sfn_stations) {
        s.stations_.push_back({st.x_m, st.y_m, st.power_w, std::hypot(st.x_m, st.y_m)});
    }
    s.interference_ = {itf.lambda_per_m2, itf.p_los, itf.power_w, itf.radius_m};
    s.g_s_tx_ = db_to_linear(config.gains_db.sfn_tx);
    s.g_i_tx_ = db_to_linear(config.gains_db.interferer_tx);
    s.g_rx_ = db_to_linear(config.gains_db.rx);
    s.alpha_los_ = config.path_loss.alpha_los;
    s.alpha_nlos_ = config.path_loss.alpha_nlos;
    s.noise_w_ = noise_w;
    s.bandwidth_hz_ = config.rate.bandwidth_hz;
    s.rate_h_ = config.rate.h;
    s.rate_j_ = config.rate.j;
    return s;
}

Scenario Scenario::with_station_powers(const std::vector<double>& powers_w) const {
    if (powers_w.size() != stations_.size())
        throw DomainError("with_station_powers: expected " +
                          std::to_string(stations_.size()) + " powers, got " +
                          std::to_string(powers_w.size()));
    ScenarioConfig cfg = config_;
    for (std::size_t i = 0; i < powers_w.size(); ++i)
        cfg.sfn_stations[i].power_w = powers_w[i];
    return from_config(cfg);
}

Scenario Scenario::with_interferer_density(double lambda_per_m2) const {
    ScenarioConfig cfg = config_;
    cfg.interference.lambda_per_m2 = lambda_per_m2;
    return from_config(cfg);
}

Scenario Scenario::with_interference_radius(double radius_m) const {
    ScenarioConfig cfg = config_;
    cfg.interference.radius_m = radius_m;
    return from_config(cfg);
}

HypoexpSpec build_hypoexp_spec(const Scenario& scenario) {
    std::vector<double> means;
    means.reserve(scenario.sfn_stations().size());
    for (const auto& st : scenario.sfn_stations()) {
        if (st.power_w > 0.0)
            means.push_back(st.power_w * std::pow(st.distance_m, -scenario.alpha_los()));
    }
    if (means.empty())
        throw AllPowersZeroError("every SFN station has zero transmit power");

    std::sort(means.begin(), means.end());

    HypoexpSpec spec;
    double group_ref = means.front();
    double group_sum = 0.0;
    int group_count = 0;
    auto flush = [&] {
        spec.means.push_back(group_sum / group_count);
        spec.multiplicities.push_back(group_count);
    };
    for (double mu : means) {
        if (group_count > 0 && mu - group_ref > mean_grouping_rtol * mu) {
            flush();
            group_sum = 0.0;
            group_count = 0;
            group_ref = mu;
        }
        group_sum += mu;
        ++group_count;
    }
    flush();
    return spec;
}

} // namespace sfncov
