// sfn-coverage: analytic SINR outage and rate coverage for an SFN cluster
// overlaid on a PPP interference field, with a Monte Carlo validator and a
// transmit-power allocator. Emits CSV; dB at the flag boundary, SI inside.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfncov/errors.hpp"
#include "sfncov/montecarlo.hpp"
#include "sfncov/optimizer.hpp"
#include "sfncov/outage.hpp"
#include "sfncov/scenario_io.hpp"
#include "sfncov/units.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_infeasible = 4;

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(fields[i]);
    }
    out << '\n';
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw sfncov::ConfigError("grid step must be > 0");
    if (hi < lo) throw sfncov::ConfigError("grid max must be >= min");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + static_cast<double>(i) * step;
    return grid;
}

std::vector<double> linspace(double lo, double hi, unsigned intervals) {
    if (hi < lo) throw sfncov::ConfigError("grid max must be >= min");
    std::vector<double> grid(intervals + 1);
    for (unsigned i = 0; i <= intervals; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / std::max(1u, intervals);
    return grid;
}

std::vector<std::pair<std::string, std::string>>
parse_overrides(const std::vector<std::string>& sets) {
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
            throw sfncov::ConfigError("--set expects key=value, got '" + kv + "'");
        overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return overrides;
}

sfncov::Scenario load_with_overrides(const std::string& path,
                                     const std::vector<std::string>& sets) {
    std::ifstream in(path);
    if (!in) throw sfncov::ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    std::string json = text.str();
    const auto overrides = parse_overrides(sets);
    if (!overrides.empty()) json = sfncov::apply_scenario_overrides(json, overrides);
    return sfncov::Scenario::from_config(sfncov::parse_scenario_json(json));
}

class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw sfncov::ConfigError("cannot write output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct CommonFlags {
    std::string scenario_path;
    std::vector<std::string> sets;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--scenario", flags.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", flags.sets,
                    "Override a scenario value, e.g. interference.lambda_per_m2=3e-6");
    cmd->add_option("--out", flags.out_path, "CSV destination (default: stdout)");
}

void write_pa_rows(std::ostream& out, std::size_t station_count,
                   const std::vector<sfncov::PaSweepPoint>& table) {
    std::vector<std::string> header = {"theta_hat_db", "lambda_per_m2"};
    for (std::size_t i = 1; i <= station_count; ++i)
        header.push_back("p" + std::to_string(i));
    header.insert(header.end(), {"total_w", "achieved_outage", "feasible"});
    write_row(out, header);

    for (const auto& row : table) {
        std::vector<std::string> fields = {fmt(sfncov::linear_to_db(row.theta_hat)),
                                           fmt(row.lambda_per_m2)};
        for (std::size_t i = 0; i < station_count; ++i)
            fields.push_back(i < row.solution.powers.size()
                                 ? fmt(row.solution.powers[i])
                                 : "");
        fields.push_back(fmt(row.solution.total_power));
        fields.push_back(fmt(row.solution.achieved_outage));
        fields.push_back(row.solution.feasible ? "true" : "false");
        write_row(out, fields);
    }
}

int run_outage(const CommonFlags& flags, double db_min, double db_max, double db_step) {
    const auto scenario = load_with_overrides(flags.scenario_path, flags.sets);
    OutputFile out(flags.out_path);
    write_row(out.stream(), {"theta_db", "p_t_analytic"});
    for (double theta_db : make_grid(db_min, db_max, db_step)) {
        const auto result =
            sfncov::outage_probability(scenario, sfncov::db_to_linear(theta_db));
        write_row(out.stream(), {fmt(theta_db), fmt(result.probability)});
    }
    return exit_ok;
}

int run_rate(const CommonFlags& flags, double kappa_min, double kappa_max,
             unsigned kappa_steps) {
    const auto scenario = load_with_overrides(flags.scenario_path, flags.sets);
    OutputFile out(flags.out_path);
    write_row(out.stream(), {"kappa_bps", "r_c_analytic"});
    for (double kappa : linspace(kappa_min, kappa_max, kappa_steps))
        write_row(out.stream(), {fmt(kappa), fmt(sfncov::rate_coverage(scenario, kappa))});
    return exit_ok;
}

struct SimulateFlags {
    std::vector<double> theta_db;
    std::vector<double> kappa;
    double theta_db_min = 0.0, theta_db_max = 0.0, theta_db_step = 0.0;
    double kappa_min = 0.0, kappa_max = 0.0;
    unsigned kappa_steps = 0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double radius_m = 0.0;
    unsigned threads = 0;
    bool theta_grid = false, kappa_grid = false;
};

int run_simulate(const CommonFlags& flags, const SimulateFlags& sim) {
    const auto scenario = load_with_overrides(flags.scenario_path, flags.sets);

    sfncov::SimConfig config;
    config.trials = sim.trials;
    config.seed = sim.seed;
    config.max_threads = sim.threads;
    if (sim.radius_m > 0.0) config.radius_m = sim.radius_m;

    std::vector<double> thetas = sim.theta_db;
    if (sim.theta_grid) {
        const auto grid = make_grid(sim.theta_db_min, sim.theta_db_max, sim.theta_db_step);
        thetas.insert(thetas.end(), grid.begin(), grid.end());
    }
    std::vector<double> kappas = sim.kappa;
    if (sim.kappa_grid) {
        const auto grid = linspace(sim.kappa_min, sim.kappa_max, sim.kappa_steps);
        kappas.insert(kappas.end(), grid.begin(), grid.end());
    }
    if (thetas.empty() == kappas.empty())
        throw sfncov::ConfigError(
            "simulate needs exactly one of --theta-db/--theta-db-min or --kappa/--kappa-min");

    OutputFile out(flags.out_path);
    if (!thetas.empty()) {
        write_row(out.stream(), {"theta_db", "mean", "std_error", "trials"});
        for (double theta_db : thetas) {
            const auto est = sfncov::estimate_outage(
                scenario, sfncov::db_to_linear(theta_db), config);
            write_row(out.stream(), {fmt(theta_db), fmt(est.mean), fmt(est.std_error),
                                     std::to_string(est.trials)});
        }
    } else {
        write_row(out.stream(), {"kappa_bps", "mean", "std_error", "trials"});
        for (double kappa : kappas) {
            const auto est = sfncov::estimate_rate_coverage(scenario, kappa, config);
            write_row(out.stream(), {fmt(kappa), fmt(est.mean), fmt(est.std_error),
                                     std::to_string(est.trials)});
        }
    }
    return exit_ok;
}

struct OptimizeFlags {
    double theta_hat_db = 0.0;
    double t_hat = 0.0;
    double p_max_w = 0.0;
    std::string solver = "evo";
    std::uint64_t seed = 0;
    std::uint64_t budget = 6400;
};

sfncov::PaSolver parse_solver(const std::string& name) {
    if (name == "bisect") return sfncov::PaSolver::bisection;
    if (name == "evo") return sfncov::PaSolver::evolutionary;
    throw sfncov::ConfigError("unknown solver '" + name + "', expected bisect or evo");
}

int run_optimize(const CommonFlags& flags, const OptimizeFlags& opt) {
    const auto scenario = load_with_overrides(flags.scenario_path, flags.sets);
    const sfncov::PaProblem problem{scenario, sfncov::db_to_linear(opt.theta_hat_db),
                                    opt.t_hat, opt.p_max_w};
    const double values[] = {problem.theta_hat};
    const auto table = sfncov::sweep_pa(problem, sfncov::SweepAxis::theta, values,
                                        parse_solver(opt.solver), opt.budget, opt.seed);
    OutputFile out(flags.out_path);
    write_pa_rows(out.stream(), scenario.sfn_stations().size(), table);
    return table.front().solution.feasible ? exit_ok : exit_infeasible;
}

struct SweepFlags {
    std::string axis;
    double theta_hat_db = 6.5;
    double theta_hat_db_min = 0.0, theta_hat_db_max = 0.0, theta_hat_db_step = 0.0;
    std::vector<double> lambda;
    bool theta_grid = false;
};

int run_sweep(const CommonFlags& flags, const OptimizeFlags& opt, const SweepFlags& sweep) {
    const auto scenario = load_with_overrides(flags.scenario_path, flags.sets);
    const sfncov::PaProblem base{scenario, sfncov::db_to_linear(sweep.theta_hat_db),
                                 opt.t_hat, opt.p_max_w};

    sfncov::SweepAxis axis;
    std::vector<double> values;
    if (sweep.axis == "theta") {
        axis = sfncov::SweepAxis::theta;
        if (!sweep.theta_grid)
            throw sfncov::ConfigError("sweep --axis theta needs --theta-hat-db-min/max/step");
        for (double db : make_grid(sweep.theta_hat_db_min, sweep.theta_hat_db_max,
                                   sweep.theta_hat_db_step))
            values.push_back(sfncov::db_to_linear(db));
    } else if (sweep.axis == "lambda") {
        axis = sfncov::SweepAxis::lambda;
        values = sweep.lambda;
        if (values.empty())
            throw sfncov::ConfigError("sweep --axis lambda needs --lambda values");
    } else {
        throw sfncov::ConfigError("unknown sweep axis '" + sweep.axis +
                                  "', expected theta or lambda");
    }

    const auto table = sfncov::sweep_pa(base, axis, values, parse_solver(opt.solver),
                                        opt.budget, opt.seed);
    OutputFile out(flags.out_path);
    write_pa_rows(out.stream(), scenario.sfn_stations().size(), table);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SINR outage, rate coverage and power allocation for an SFN "
                 "over a PPP interference field"};
    app.require_subcommand(1);

    CommonFlags outage_flags;
    double theta_db_min = -10.0, theta_db_max = 25.0, theta_db_step = 0.5;
    auto* outage_cmd = app.add_subcommand("outage", "Analytic outage over a theta grid");
    add_common(outage_cmd, outage_flags);
    outage_cmd->add_option("--theta-db-min", theta_db_min, "Grid start, dB");
    outage_cmd->add_option("--theta-db-max", theta_db_max, "Grid end, dB");
    outage_cmd->add_option("--theta-db-step", theta_db_step, "Grid step, dB");

    CommonFlags rate_flags;
    double kappa_min = 0.0, kappa_max = 2e8;
    unsigned kappa_steps = 100;
    auto* rate_cmd = app.add_subcommand("rate", "Analytic rate coverage over a kappa grid");
    add_common(rate_cmd, rate_flags);
    rate_cmd->add_option("--kappa-min", kappa_min, "Grid start, bit/s");
    rate_cmd->add_option("--kappa-max", kappa_max, "Grid end, bit/s");
    rate_cmd->add_option("--kappa-steps", kappa_steps, "Number of grid intervals");

    CommonFlags sim_flags;
    SimulateFlags sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo outage or rate coverage");
    add_common(sim_cmd, sim_flags);
    sim_cmd->add_option("--trials", sim.trials, "Trials per grid point");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_cmd->add_option("--theta-db", sim.theta_db, "SINR threshold(s), dB");
    auto* tmin = sim_cmd->add_option("--theta-db-min", sim.theta_db_min, "Grid start, dB");
    sim_cmd->add_option("--theta-db-max", sim.theta_db_max, "Grid end, dB")->needs(tmin);
    sim_cmd->add_option("--theta-db-step", sim.theta_db_step, "Grid step, dB")->needs(tmin);
    sim_cmd->add_option("--kappa", sim.kappa, "Target rate(s), bit/s");
    auto* kmin = sim_cmd->add_option("--kappa-min", sim.kappa_min, "Grid start, bit/s");
    sim_cmd->add_option("--kappa-max", sim.kappa_max, "Grid end, bit/s")->needs(kmin);
    sim_cmd->add_option("--kappa-steps", sim.kappa_steps, "Grid intervals")->needs(kmin);
    sim_cmd->add_option("--radius-m", sim.radius_m, "Override the field radius");
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all)");

    CommonFlags opt_flags;
    OptimizeFlags opt;
    auto* opt_cmd = app.add_subcommand("optimize", "Solve the power-allocation problem");
    add_common(opt_cmd, opt_flags);
    opt_cmd->add_option("--theta-hat-db", opt.theta_hat_db, "SINR target, dB")->required();
    opt_cmd->add_option("--t-hat", opt.t_hat, "Outage target in (0, 1]")->required();
    opt_cmd->add_option("--p-max-w", opt.p_max_w, "Per-station power cap, W")->required();
    opt_cmd->add_option("--solver", opt.solver, "bisect or evo");
    opt_cmd->add_option("--seed", opt.seed, "Evolutionary RNG seed");
    opt_cmd->add_option("--budget", opt.budget, "Evolutionary evaluation budget");

    CommonFlags sweep_flags;
    OptimizeFlags sweep_opt;
    SweepFlags sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Power-allocation sweep over theta or lambda");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--axis", sweep.axis, "theta or lambda")->required();
    sweep_cmd->add_option("--t-hat", sweep_opt.t_hat, "Outage target in (0, 1]")->required();
    sweep_cmd->add_option("--p-max-w", sweep_opt.p_max_w, "Per-station power cap, W")->required();
    sweep_cmd->add_option("--theta-hat-db", sweep.theta_hat_db,
                          "Fixed SINR target for the lambda axis, dB");
    auto* smin = sweep_cmd->add_option("--theta-hat-db-min", sweep.theta_hat_db_min,
                                       "Theta-axis grid start, dB");
    sweep_cmd->add_option("--theta-hat-db-max", sweep.theta_hat_db_max,
                          "Theta-axis grid end, dB")->needs(smin);
    sweep_cmd->add_option("--theta-hat-db-step", sweep.theta_hat_db_step,
                          "Theta-axis grid step, dB")->needs(smin);
    sweep_cmd->add_option("--lambda", sweep.lambda, "Lambda-axis values, stations per m^2");
    sweep_cmd->add_option("--solver", sweep_opt.solver, "bisect or evo");
    sweep_cmd->add_option("--seed", sweep_opt.seed, "Evolutionary RNG seed");
    sweep_cmd->add_option("--budget", sweep_opt.budget, "Evolutionary evaluation budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }
    sim.theta_grid = tmin->count() > 0;
    sim.kappa_grid = kmin->count() > 0;
    sweep.theta_grid = smin->count() > 0;

    try {
        if (outage_cmd->parsed())
            return run_outage(outage_flags, theta_db_min, theta_db_max, theta_db_step);
        if (rate_cmd->parsed())
            return run_rate(rate_flags, kappa_min, kappa_max, kappa_steps);
        if (sim_cmd->parsed()) return run_simulate(sim_flags, sim);
        if (opt_cmd->parsed()) return run_optimize(opt_flags, opt);
        if (sweep_cmd->parsed()) return run_sweep(sweep_flags, sweep_opt, sweep);
    } catch (const sfncov::NumericalInstabilityError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const sfncov::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const sfncov::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return exit_ok;
}
