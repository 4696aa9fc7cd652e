#include "sfncov/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "sfncov/errors.hpp"

namespace sfncov {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known)
            throw ConfigError("unknown key '" + item.key() + "' in '" + where + "'");
    }
}

const json& field(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("missing key '" + where + "." + key + "'");
    return *it;
}

double number(const json& obj, const std::string& where, const char* key) {
    const json& v = field(obj, where, key);
    if (!v.is_number())
        throw ConfigError("'" + where + "." + key + "' must be a number");
    return v.get<double>();
}

} // namespace

ScenarioConfig parse_scenario_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON does not parse: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("scenario JSON must be an object");
    check_keys(root, "scenario",
               {"sfn_stations", "interference", "gains_db", "path_loss", "noise", "rate"});

    ScenarioConfig cfg;

    const json& stations = field(root, "scenario", "sfn_stations");
    if (!stations.is_array() || stations.empty())
        throw ConfigError("'sfn_stations' must be a non-empty array");
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const json& st = stations[i];
        const std::string where = "sfn_stations." + std::to_string(i);
        if (!st.is_object())
            throw ConfigError("'" + where + "' must be an object");
        check_keys(st, where, {"x_m", "y_m", "power_w"});
        cfg.sfn_stations.push_back({number(st, where, "x_m"), number(st, where, "y_m"),
                                    number(st, where, "power_w")});
    }

    const json& itf = field(root, "scenario", "interference");
    check_keys(itf, "interference", {"lambda_per_m2", "p_los", "power_w", "radius_m"});
    cfg.interference = {number(itf, "interference", "lambda_per_m2"),
                        number(itf, "interference", "p_los"),
                        number(itf, "interference", "power_w"),
                        number(itf, "interference", "radius_m")};

    const json& gains = field(root, "scenario", "gains_db");
    check_keys(gains, "gains_db", {"sfn_tx", "interferer_tx", "rx"});
    cfg.gains_db = {number(gains, "gains_db", "sfn_tx"),
                    number(gains, "gains_db", "interferer_tx"),
                    number(gains, "gains_db", "rx")};

    const json& pl = field(root, "scenario", "path_loss");
    check_keys(pl, "path_loss", {"alpha_los", "alpha_nlos"});
    cfg.path_loss = {number(pl, "path_loss", "alpha_los"),
                     number(pl, "path_loss", "alpha_nlos")};

    const json& noise = field(root, "scenario", "noise");
    if (!noise.is_object())
        throw ConfigError("'noise' must be an object");
    if (noise.contains("dbm")) {
        check_keys(noise, "noise", {"dbm"});
        cfg.noise = {NoiseSpec::Kind::dbm, number(noise, "noise", "dbm")};
    } else if (noise.contains("temperature_k")) {
        check_keys(noise, "noise", {"temperature_k", "from_bandwidth"});
        const json& fb = field(noise, "noise", "from_bandwidth");
        if (!fb.is_boolean() || !fb.get<bool>())
            throw ConfigError("'noise.from_bandwidth' must be true when temperature_k is given");
        cfg.noise = {NoiseSpec::Kind::from_bandwidth, number(noise, "noise", "temperature_k")};
    } else {
        throw ConfigError("'noise' needs either 'dbm' or 'temperature_k' with 'from_bandwidth'");
    }

    const json& rate = field(root, "scenario", "rate");
    check_keys(rate, "rate", {"bandwidth_hz", "h", "j"});
    cfg.rate = {number(rate, "rate", "bandwidth_hz"), number(rate, "rate", "h"),
                number(rate, "rate", "j")};

    return cfg;
}

std::string scenario_config_to_json(const ScenarioConfig& cfg) {
    json root;
    json stations = json::array();
    for (const auto& st : cfg.sfn_stations)
        stations.push_back({{"x_m", st.x_m}, {"y_m", st.y_m}, {"power_w", st.power_w}});
    root["sfn_stations"] = std::move(stations);
    root["interference"] = {{"lambda_per_m2", cfg.interference.lambda_per_m2},
                            {"p_los", cfg.interference.p_los},
                            {"power_w", cfg.interference.power_w},
                            {"radius_m", cfg.interference.radius_m}};
    root["gains_db"] = {{"sfn_tx", cfg.gains_db.sfn_tx},
                        {"interferer_tx", cfg.gains_db.interferer_tx},
                        {"rx", cfg.gains_db.rx}};
    root["path_loss"] = {{"alpha_los", cfg.path_loss.alpha_los},
                         {"alpha_nlos", cfg.path_loss.alpha_nlos}};
    if (cfg.noise.kind == NoiseSpec::Kind::dbm)
        root["noise"] = {{"dbm", cfg.noise.value}};
    else
        root["noise"] = {{"temperature_k", cfg.noise.value}, {"from_bandwidth", true}};
    root["rate"] = {{"bandwidth_hz", cfg.rate.bandwidth_hz},
                    {"h", cfg.rate.h},
                    {"j", cfg.rate.j}};
    return root.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return Scenario::from_config(parse_scenario_json(text.str()));
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write scenario file '" + path.string() + "'");
    out << scenario_config_to_json(scenario.config());
}

std::string apply_scenario_overrides(
    const std::string& json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON does not parse: ") + e.what());
    }

    for (const auto& [path, value_text] : overrides) {
        json* node = &root;
        std::size_t start = 0;
        while (start <= path.size()) {
            const std::size_t dot = path.find('.', start);
            const std::string part = path.substr(
                start, dot == std::string::npos ? std::string::npos : dot - start);
            if (part.empty())
                throw ConfigError("override path '" + path + "' is malformed");
            if (node->is_array()) {
                std::size_t index = 0;
                try {
                    index = std::stoul(part);
                } catch (const std::exception&) {
                    throw ConfigError("override path '" + path +
                                      "': '" + part + "' is not an array index");
                }
                if (index >= node->size())
                    throw ConfigError("override path '" + path + "': index " + part +
                                      " out of range");
                node = &(*node)[index];
            } else if (node->is_object()) {
                auto it = node->find(part);
                if (it == node->end())
                    throw ConfigError("override path '" + path + "': unknown key '" +
                                      part + "'");
                node = &*it;
            } else {
                throw ConfigError("override path '" + path +
                                  "' descends into a scalar at '" + part + "'");
            }
            if (dot == std::string::npos) break;
            start = dot + 1;
        }

        json value;
        try {
            value = json::parse(value_text);
        } catch (const json::exception&) {
            throw ConfigError("override '" + path + "=" + value_text +
                              "': value is not a JSON scalar");
        }
        if (node->is_number() && value.is_number())
            *node = value;
        else if (node->is_boolean() && value.is_boolean())
            *node = value;
        else
            throw ConfigError("override '" + path + "=" + value_text +
                              "': type does not match the existing value");
    }
    return root.dump(2) + "\n";
}

} // namespace sfncov
