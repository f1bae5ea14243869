#include "relaylab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace relaylab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config: " + path + ": " + what);
}

void require_object(const json& node, const std::string& path) {
    if (!node.is_object()) fail(path, "expected an object");
}

void check_keys(const json& node, const std::string& path,
                std::initializer_list<const char*> allowed) {
    require_object(node, path);
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) fail(path + "." + item.key(), "unknown key");
    }
}

double get_number(const json& node, const std::string& path) {
    if (!node.is_number()) fail(path, "expected a number");
    return node.get<double>();
}

double number_at(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required key");
    return get_number(obj.at(key), path + "." + key);
}

double number_or(const json& obj, const std::string& path, const char* key,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj.at(key), path + "." + key);
}

bool bool_or(const json& obj, const std::string& path, const char* key,
             bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& node = obj.at(key);
    if (!node.is_boolean()) fail(path + "." + key, "expected a boolean");
    return node.get<bool>();
}

std::uint64_t uint_at(const json& node, const std::string& path) {
    if (!node.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return node.get<std::uint64_t>();
}

FourierSeries parse_fourier(const json& node, const std::string& path) {
    check_keys(node, path, {"dc", "terms"});
    const double dc = number_or(node, path, "dc", 0.0);
    std::vector<HarmonicTerm> terms;
    if (node.contains("terms")) {
        const json& arr = node.at("terms");
        if (!arr.is_array()) fail(path + ".terms", "expected an array");
        for (std::size_t j = 0; j < arr.size(); ++j) {
            const std::string tpath = path + ".terms[" + std::to_string(j) + "]";
            check_keys(arr[j], tpath, {"order", "amplitude", "phase_rad"});
            const double order = number_at(arr[j], tpath, "order");
            if (order != static_cast<int>(order) || order < 1)
                fail(tpath + ".order", "expected a positive integer");
            terms.push_back({static_cast<int>(order),
                             number_at(arr[j], tpath, "amplitude"),
                             number_or(arr[j], tpath, "phase_rad", 0.0)});
        }
    }
    try {
        return FourierSeries(dc, std::move(terms));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

SamplingConfig parse_sampling(const json& node, const std::string& path) {
    check_keys(node, path, {"f0_hz", "fs_hz", "n_samples"});
    SamplingConfig cfg;
    cfg.f0 = number_at(node, path, "f0_hz");
    cfg.fs = number_at(node, path, "fs_hz");
    const double n = number_at(node, path, "n_samples");
    if (n != static_cast<std::size_t>(n)) fail(path + ".n_samples", "expected an integer");
    cfg.n_samples = static_cast<std::size_t>(n);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return cfg;
}

FaultScenario parse_scenario(const json& node, const std::string& path) {
    check_keys(node, path,
               {"r_ohm", "l_h", "amplitude_a", "inception_angle_rad", "offset",
                "t0_s", "phase_rad"});
    FaultScenario scn;
    scn.R = number_at(node, path, "r_ohm");
    scn.L = number_at(node, path, "l_h");
    scn.amplitude = number_at(node, path, "amplitude_a");
    scn.inception_angle = number_or(node, path, "inception_angle_rad", 0.0);
    scn.offset_enabled = bool_or(node, path, "offset", true);
    scn.t0 = number_or(node, path, "t0_s", 0.0);
    scn.phase = number_or(node, path, "phase_rad", 0.0);
    try {
        scn.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return scn;
}

ErrorModel parse_errors(const json& node, const std::string& path,
                        bool* seed_given) {
    check_keys(node, path,
               {"current", "voltage", "current_noise_sigma",
                "voltage_noise_sigma", "seed"});
    ErrorModel model;
    if (node.contains("current"))
        model.current_error = parse_fourier(node.at("current"), path + ".current");
    if (node.contains("voltage"))
        model.voltage_error = parse_fourier(node.at("voltage"), path + ".voltage");
    model.current_noise_sigma = number_or(node, path, "current_noise_sigma", 0.0);
    model.voltage_noise_sigma = number_or(node, path, "voltage_noise_sigma", 0.0);
    if (model.current_noise_sigma < 0.0 || model.voltage_noise_sigma < 0.0)
        fail(path, "noise sigmas must be >= 0");
    if (node.contains("seed")) {
        model.seed = uint_at(node.at("seed"), path + ".seed");
        *seed_given = true;
    }
    return model;
}

ZoneCharacteristic parse_zone(const json& node, const std::string& path) {
    require_object(node, path);
    if (!node.contains("type")) fail(path + ".type", "missing required key");
    const json& type = node.at("type");
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const std::string kind = type.get<std::string>();
    try {
        if (kind == "rect") {
            check_keys(node, path, {"type", "r_min", "r_max", "l_min", "l_max"});
            RectZone rect{number_at(node, path, "r_min"),
                          number_at(node, path, "r_max"),
                          number_at(node, path, "l_min"),
                          number_at(node, path, "l_max")};
            rect.validate();
            return ZoneCharacteristic(rect);
        }
        if (kind == "polygon") {
            check_keys(node, path, {"type", "vertices"});
            if (!node.contains("vertices")) fail(path + ".vertices", "missing required key");
            const json& arr = node.at("vertices");
            if (!arr.is_array()) fail(path + ".vertices", "expected an array");
            std::vector<std::array<double, 2>> verts;
            for (std::size_t j = 0; j < arr.size(); ++j) {
                const std::string vpath =
                    path + ".vertices[" + std::to_string(j) + "]";
                if (!arr[j].is_array() || arr[j].size() != 2)
                    fail(vpath, "expected a [r, l] pair");
                verts.push_back(
                    {get_number(arr[j][0], vpath), get_number(arr[j][1], vpath)});
            }
            return ZoneCharacteristic(PolygonZone(std::move(verts)));
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".type", "expected \"rect\" or \"polygon\"");
}

EstimatorChoice parse_estimator(const json& node, const std::string& path) {
    check_keys(node, path, {"kind", "rows", "count"});
    if (!node.contains("kind")) fail(path + ".kind", "missing required key");
    if (!node.at("kind").is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = node.at("kind").get<std::string>();
    EstimatorChoice choice;
    if (kind == "short") {
        choice.kind = EstimatorChoice::Kind::short_window;
        if (node.contains("rows") || node.contains("count"))
            fail(path, "short estimator takes no parameters");
    } else if (kind == "long") {
        choice.kind = EstimatorChoice::Kind::long_window;
        const double rows = number_at(node, path, "rows");
        if (rows != static_cast<std::size_t>(rows) || rows < 2)
            fail(path + ".rows", "expected an integer >= 2");
        choice.param = static_cast<std::size_t>(rows);
    } else if (kind == "averaged") {
        choice.kind = EstimatorChoice::Kind::averaged;
        const double count = number_at(node, path, "count");
        if (count != static_cast<std::size_t>(count) || count < 1)
            fail(path + ".count", "expected an integer >= 1");
        choice.param = static_cast<std::size_t>(count);
    } else {
        fail(path + ".kind", "expected \"short\", \"long\" or \"averaged\"");
    }
    return choice;
}

AnalysisOptions parse_analysis(const json& node, const std::string& path) {
    check_keys(node, path, {"f_max_hz", "f_step_hz", "trace_cycles"});
    AnalysisOptions opts;
    if (node.contains("f_max_hz"))
        opts.f_max = number_at(node, path, "f_max_hz");
    if (node.contains("f_step_hz"))
        opts.f_step = number_at(node, path, "f_step_hz");
    if (node.contains("trace_cycles")) {
        const double cycles = number_at(node, path, "trace_cycles");
        if (cycles != static_cast<std::size_t>(cycles) || cycles < 1)
            fail(path + ".trace_cycles", "expected an integer >= 1");
        opts.trace_cycles = static_cast<std::size_t>(cycles);
    }
    if ((opts.f_max && *opts.f_max <= 0.0) || (opts.f_step && *opts.f_step <= 0.0))
        fail(path, "frequency bounds must be positive");
    return opts;
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    check_keys(root, "$",
               {"sampling", "scenario", "error_model", "zone", "estimator",
                "trip", "analysis"});

    ScenarioConfig cfg;
    if (!root.contains("sampling")) fail("$.sampling", "missing required section");
    cfg.sampling = parse_sampling(root.at("sampling"), "$.sampling");
    if (!root.contains("scenario")) fail("$.scenario", "missing required section");
    cfg.scenario = parse_scenario(root.at("scenario"), "$.scenario");
    if (root.contains("error_model"))
        cfg.errors =
            parse_errors(root.at("error_model"), "$.error_model", &cfg.seed_given);
    if (root.contains("zone")) cfg.zone = parse_zone(root.at("zone"), "$.zone");
    if (root.contains("estimator"))
        cfg.estimator = parse_estimator(root.at("estimator"), "$.estimator");
    if (root.contains("trip")) {
        check_keys(root.at("trip"), "$.trip", {"threshold"});
        const double threshold = number_at(root.at("trip"), "$.trip", "threshold");
        if (threshold != static_cast<int>(threshold) || threshold < 1)
            fail("$.trip.threshold", "expected an integer >= 1");
        cfg.trip_threshold = static_cast<int>(threshold);
    }
    if (root.contains("analysis"))
        cfg.analysis = parse_analysis(root.at("analysis"), "$.analysis");
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace relaylab
