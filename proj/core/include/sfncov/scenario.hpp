#pragma once

#include <vector>

namespace sfncov {

// ---------------------------------------------------------------------------
// Configuration layer. These structs mirror the scenario JSON schema one to
// one and keep the units the file uses (dB, dBm, kelvin). Conversion to
// linear SI happens exactly once, when a Scenario is built.
// ---------------------------------------------------------------------------

struct StationSpec {
    double x_m = 0.0;
    double y_m = 0.0;
    double power_w = 0.0;

    bool operator==(const StationSpec&) const = default;
};

struct NoiseSpec {
    enum class Kind { dbm, from_bandwidth };
    Kind kind = Kind::dbm;
    // dBm for Kind::dbm, temperature in kelvin for Kind::from_bandwidth.
    double value = 0.0;

    bool operator==(const NoiseSpec&) const = default;
};

struct InterferenceSpec {
    double lambda_per_m2 = 0.0;
    double p_los = 0.0;
    double power_w = 0.0;
    double radius_m = 0.0;

    bool operator==(const InterferenceSpec&) const = default;
};

struct GainsSpec {
    double sfn_tx = 0.0;
    double interferer_tx = 0.0;
    double rx = 0.0;

    bool operator==(const GainsSpec&) const = default;
};

struct PathLossSpec {
    double alpha_los = 0.0;
    double alpha_nlos = 0.0;

    bool operator==(const PathLossSpec&) const = default;
};

struct RateSpec {
    double bandwidth_hz = 0.0;
    double h = 1.0;
    double j = 1.0;

    bool operator==(const RateSpec&) const = default;
};

struct ScenarioConfig {
    std::vector<StationSpec> sfn_stations;
    InterferenceSpec interference;
    GainsSpec gains_db;
    PathLossSpec path_loss;
    NoiseSpec noise;
    RateSpec rate;

    bool operator==(const ScenarioConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Domain layer, linear SI units throughout.
// ---------------------------------------------------------------------------

// One SFN transmitter with its derived distance to the cluster center.
struct SfnBaseStation {
    double x_m;
    double y_m;
    double power_w;
    double distance_m;
};

struct InterferenceField {
    double lambda_per_m2;
    double p_los;
    double power_w;
    double radius_m;

    double lambda_los() const { return p_los * lambda_per_m2; }
    double lambda_nlos() const { return (1.0 - p_los) * lambda_per_m2; }
};

// Exponential means of the per-station received powers, grouped by value.
// Means are strictly distinct and ascending; multiplicities count how many
// stations share each mean.
struct HypoexpSpec {
    std::vector<double> means;
    std::vector<int> multiplicities;

    int total() const;
};

// Relative tolerance under which two station means collapse into one
// multiplicity bucket. Means closer than this make the distinct-means
// product form ill-conditioned, so they are treated as exactly equal.
inline constexpr double mean_grouping_rtol = 1e-9;

// Immutable scenario in linear SI units. All accessors are pure; instances
// can be shared freely between threads.
class Scenario {
public:
    // Validates every field and throws ConfigError naming the offending
    // parameter.
    static Scenario from_config(const ScenarioConfig& config);

    const std::vector<SfnBaseStation>& sfn_stations() const { return stations_; }
    const InterferenceField& interference() const { return interference_; }

    double g_s_tx() const { return g_s_tx_; }
    double g_i_tx() const { return g_i_tx_; }
    double g_rx() const { return g_rx_; }
    double alpha_los() const { return alpha_los_; }
    double alpha_nlos() const { return alpha_nlos_; }
    double noise_w() const { return noise_w_; }
    double bandwidth_hz() const { return bandwidth_hz_; }
    double rate_h() const { return rate_h_; }
    double rate_j() const { return rate_j_; }

    // The configuration this scenario was built from, kept verbatim so that
    // serialization is lossless.
    const ScenarioConfig& config() const { return config_; }

    // Copies with one knob changed; used by sweeps and the optimizer.
    Scenario with_station_powers(const std::vector<double>& powers_w) const;
    Scenario with_interferer_density(double lambda_per_m2) const;
    Scenario with_interference_radius(double radius_m) const;

private:
    Scenario() = default;

    ScenarioConfig config_;
    std::vector<SfnBaseStation> stations_;
    InterferenceField interference_{};
    double g_s_tx_ = 1.0;
    double g_i_tx_ = 1.0;
    double g_rx_ = 1.0;
    double alpha_los_ = 0.0;
    double alpha_nlos_ = 0.0;
    double noise_w_ = 0.0;
    double bandwidth_hz_ = 0.0;
    double rate_h_ = 1.0;
    double rate_j_ = 1.0;
};

inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.config() == b.config();
}

// Exponential mean P_i * d_i^(-alpha_los) for every station with positive
// power, grouped within mean_grouping_rtol. Stations with zero power are
// skipped. Throws AllPowersZeroError if nothing transmits.
HypoexpSpec build_hypoexp_spec(const Scenario& scenario);

} // namespace sfncov
