#include "sfncov/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "sfncov/errors.hpp"

namespace sfncov {
namespace {

constexpr std::uint64_t chunk_trials = 8192;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

template <typename Predicate>
SimEstimate run_trials(const Scenario& scenario, const SimConfig& config,
                       Predicate&& success) {
    if (config.trials < 1)
        throw DomainError("simulation needs at least one trial");
    const Scenario local = config.radius_m
        ? scenario.with_interference_radius(*config.radius_m)
        : scenario;

    const std::uint64_t chunks = (config.trials + chunk_trials - 1) / chunk_trials;
    std::vector<std::uint64_t> counts(chunks, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunks) return;
            std::mt19937_64 rng = substream_engine(config.seed, c);
            const std::uint64_t begin = c * chunk_trials;
            const std::uint64_t end = std::min(config.trials, begin + chunk_trials);
            std::uint64_t hits = 0;
            for (std::uint64_t t = begin; t < end; ++t)
                hits += success(simulate_sinr_once(local, rng)) ? 1 : 0;
            counts[c] = hits;
        }
    };

    unsigned workers = config.max_threads > 0 ? config.max_threads
                                              : std::thread::hardware_concurrency();
    if (workers < 1) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    const double mean = static_cast<double>(total) / static_cast<double>(config.trials);
    const double std_error =
        std::sqrt(mean * (1.0 - mean) / static_cast<double>(config.trials));
    return {mean, std_error, config.trials};
}

} // namespace

std::mt19937_64 substream_engine(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    splitmix64(state);
    return std::mt19937_64(splitmix64(state));
}

std::vector<Interferer> sample_interferers(const InterferenceField& field,
                                           std::mt19937_64& rng) {
    if (!(field.radius_m > 0.0))
        throw DomainError("sample_interferers requires radius_m > 0");
    const double mean_count =
        field.lambda_per_m2 * std::numbers::pi * field.radius_m * field.radius_m;
    if (mean_count <= 0.0) return {};

    const int count = std::poisson_distribution<int>(mean_count)(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Interferer> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        // sqrt of a uniform puts the point uniformly on the disk
        const double r = field.radius_m * std::sqrt(unit(rng));
        const bool los = unit(rng) < field.p_los;
        out.push_back({r, los});
    }
    return out;
}

double sinr_from_draws(const Scenario& scenario,
                       std::span<const double> sfn_fading,
                       std::span<const Interferer> interferers,
                       std::span<const double> interferer_fading) {
    const auto& stations = scenario.sfn_stations();
    if (sfn_fading.size() != stations.size() ||
        interferer_fading.size() != interferers.size())
        throw DomainError("sinr_from_draws: fading spans do not match");

    double signal = 0.0;
    for (std::size_t i = 0; i < stations.size(); ++i)
        signal += stations[i].power_w * sfn_fading[i] *
                  std::pow(stations[i].distance_m, -scenario.alpha_los());
    signal *= scenario.g_s_tx() * scenario.g_rx();

    double interference = 0.0;
    for (std::size_t j = 0; j < interferers.size(); ++j) {
        const double alpha =
            interferers[j].is_los ? scenario.alpha_los() : scenario.alpha_nlos();
        interference += interferer_fading[j] *
                        std::pow(interferers[j].distance_m, -alpha);
    }
    interference *= scenario.g_i_tx() * scenario.g_rx() *
                    scenario.interference().power_w;

    return signal / (scenario.noise_w() + interference);
}

double simulate_sinr_once(const Scenario& scenario, std::mt19937_64& rng) {
    std::exponential_distribution<double> fading(1.0);
    std::vector<double> sfn_fading(scenario.sfn_stations().size());
    for (double& h : sfn_fading) h = fading(rng);

    const std::vector<Interferer> interferers =
        sample_interferers(scenario.interference(), rng);
    std::vector<double> interferer_fading(interferers.size());
    for (double& h : interferer_fading) h = fading(rng);

    return sinr_from_draws(scenario, sfn_fading, interferers, interferer_fading);
}

SimEstimate estimate_outage(const Scenario& scenario, double theta,
                            const SimConfig& config) {
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw DomainError("estimate_outage requires a finite theta >= 0");
    return run_trials(scenario, config,
                      [theta](double sinr) { return sinr < theta; });
}

SimEstimate estimate_rate_coverage(const Scenario& scenario, double kappa,
                                   const SimConfig& config) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw DomainError("estimate_rate_coverage requires a finite kappa >= 0");
    const double h_bw = scenario.rate_h() * scenario.bandwidth_hz();
    const double j = scenario.rate_j();
    return run_trials(scenario, config, [=](double sinr) {
        return h_bw * std::log2(1.0 + j * sinr) > kappa;
    });
}

double choose_radius(double alpha_los, double epsilon) {
    if (!(alpha_los > 1.0) || !std::isfinite(alpha_los))
        throw DomainError("choose_radius requires alpha_los > 1");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw DomainError("choose_radius requires epsilon in (0, 1]");
    return std::pow(epsilon, -1.0 / (alpha_los - 1.0));
}

} // namespace sfncov
