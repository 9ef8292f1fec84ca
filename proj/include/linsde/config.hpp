#pragma once

// Declarative run configuration: JSON in, validated RunConfig out, plus a
// canonical serializer whose output hashes into the reproducibility stamp on
// every artifact. Unknown keys are rejected with the offending path so typos
// never silently change a run.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "linsde/estimate.hpp"
#include "linsde/gou.hpp"
#include "linsde/model.hpp"

namespace linsde {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { Exact, Gou };

struct RunConfig {
    Scenario scenario;
    std::uint64_t seed = 0;
    std::size_t reps = 100000;
    int n_max = 4;
    std::vector<double> alphas = {0.5, 1.0, 2.0};
    double lst_t = 2.0;
    std::array<double, 2> order_t = {0.5, 2.0};
    double quad_tol = 1e-10;
    int paths = 1;
    Engine engine = Engine::Exact;
    GaussianZSpec gou;
    double gou_h = 0.0078125; // 2^-7

    bool operator==(const RunConfig&) const = default;
};

inline bool operator==(const JumpDistribution& a, const JumpDistribution& b) {
    return a.kind == b.kind && a.value == b.value && a.shape == b.shape;
}
inline bool operator==(const JumpComponent& a, const JumpComponent& b) {
    return a.rate == b.rate && a.dist == b.dist;
}
inline bool operator==(const SubordinatorSpec& a, const SubordinatorSpec& b) {
    return a.drift == b.drift && a.components == b.components;
}
inline bool operator==(const DriverPair& a, const DriverPair& b) {
    return a.y == b.y && a.z == b.z;
}
inline bool operator==(const X0Law& a, const X0Law& b) {
    return a.kind == b.kind && a.param == b.param;
}
inline bool operator==(const RandomDrift& a, const RandomDrift& b) {
    return a.values == b.values && a.probs == b.probs;
}
inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.pair == b.pair && a.x0 == b.x0 && a.horizon == b.horizon &&
           a.t_grid == b.t_grid && a.levy_y == b.levy_y && a.y_drift_law == b.y_drift_law;
}
inline bool operator==(const GaussianZSpec& a, const GaussianZSpec& b) {
    return a.drift == b.drift && a.sigma == b.sigma && a.jumps == b.jumps;
}

namespace detail {

using Json = nlohmann::ordered_json;

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& path) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const auto& key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw ConfigError("unknown key " + path + "/" + item.key());
    }
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing key " + path + "/" + key);
    return *it;
}

inline double number_at(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError("expected a number at " + path);
    return v.get<double>();
}

inline std::string string_at(const Json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError("expected a string at " + path);
    return v.get<std::string>();
}

inline JumpDistribution parse_dist(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at " + path);
    const std::string kind = string_at(require(j, "kind", path), path + "/kind");
    try {
        if (kind == "point") {
            reject_unknown_keys(j, {"kind", "x"}, path);
            return JumpDistribution::point_mass(number_at(require(j, "x", path), path + "/x"));
        }
        if (kind == "uniform") {
            reject_unknown_keys(j, {"kind", "b"}, path);
            return JumpDistribution::uniform(number_at(require(j, "b", path), path + "/b"));
        }
        if (kind == "exp") {
            reject_unknown_keys(j, {"kind", "mean"}, path);
            return JumpDistribution::exponential(
                number_at(require(j, "mean", path), path + "/mean"));
        }
        if (kind == "erlang") {
            reject_unknown_keys(j, {"kind", "k", "mean"}, path);
            return JumpDistribution::erlang(require(j, "k", path).get<int>(),
                                            number_at(require(j, "mean", path), path + "/mean"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError("unknown distribution kind '" + kind + "' at " + path + "/kind");
}

inline std::vector<JumpComponent> parse_components(const Json& arr, const std::string& path) {
    if (!arr.is_array()) throw ConfigError("expected an array at " + path);
    std::vector<JumpComponent> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string item_path = path + "/" + std::to_string(i);
        const Json& item = arr[i];
        if (!item.is_object()) throw ConfigError("expected an object at " + item_path);
        reject_unknown_keys(item, {"rate", "dist"}, item_path);
        JumpComponent comp;
        comp.rate = number_at(require(item, "rate", item_path), item_path + "/rate");
        comp.dist = parse_dist(require(item, "dist", item_path), item_path + "/dist");
        out.push_back(comp);
    }
    return out;
}

inline SubordinatorSpec parse_subordinator(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at " + path);
    reject_unknown_keys(j, {"drift", "jumps"}, path);
    SubordinatorSpec spec;
    if (j.contains("drift")) spec.drift = number_at(j["drift"], path + "/drift");
    if (j.contains("jumps")) spec.components = parse_components(j["jumps"], path + "/jumps");
    return spec;
}

inline X0Law parse_x0(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at " + path);
    const std::string kind = string_at(require(j, "kind", path), path + "/kind");
    try {
        if (kind == "const") {
            reject_unknown_keys(j, {"kind", "value"}, path);
            return X0Law::constant(number_at(require(j, "value", path), path + "/value"));
        }
        if (kind == "exp") {
            reject_unknown_keys(j, {"kind", "mean"}, path);
            return X0Law::exponential(number_at(require(j, "mean", path), path + "/mean"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError("unknown x0 kind '" + kind + "' at " + path + "/kind");
}

inline std::vector<double> parse_number_array(const Json& arr, const std::string& path) {
    if (!arr.is_array()) throw ConfigError("expected an array at " + path);
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(number_at(arr[i], path + "/" + std::to_string(i)));
    return out;
}

inline Json dist_to_json(const JumpDistribution& d) {
    Json j;
    switch (d.kind) {
    case JumpKind::PointMass:
        j["kind"] = "point";
        j["x"] = d.value;
        break;
    case JumpKind::Uniform:
        j["kind"] = "uniform";
        j["b"] = d.value;
        break;
    case JumpKind::Exponential:
        j["kind"] = "exp";
        j["mean"] = d.value;
        break;
    case JumpKind::Erlang:
        j["kind"] = "erlang";
        j["k"] = d.shape;
        j["mean"] = d.value;
        break;
    }
    return j;
}

inline Json subordinator_to_json(const SubordinatorSpec& s) {
    Json j;
    j["drift"] = s.drift;
    j["jumps"] = Json::array();
    for (const auto& c : s.components) {
        Json comp;
        comp["rate"] = c.rate;
        comp["dist"] = dist_to_json(c.dist);
        j["jumps"].push_back(comp);
    }
    return j;
}

} // namespace detail

/// Parses and fully validates a JSON run configuration. Defaults:
/// reps = 100000, seed = 0, n_max = 4. Model violations (for example a Z
/// jump with support above 1) surface with the model's own message.
inline RunConfig parse_config(const std::string& text) {
    detail::Json root;
    try {
        root = detail::Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("top-level config must be an object");
    detail::reject_unknown_keys(
        root,
        {"y", "z", "x0", "y_mode", "horizon", "t_grid", "seed", "reps", "n_max", "alphas",
         "lst_t", "order_t", "quad_tol", "paths", "engine", "gou"},
        "");

    RunConfig cfg;
    cfg.scenario.pair.y = detail::parse_subordinator(detail::require(root, "y", ""), "/y");
    cfg.scenario.pair.z = detail::parse_subordinator(detail::require(root, "z", ""), "/z");
    cfg.scenario.x0 = detail::parse_x0(detail::require(root, "x0", ""), "/x0");
    cfg.scenario.horizon = detail::number_at(detail::require(root, "horizon", ""), "/horizon");
    cfg.scenario.t_grid = detail::parse_number_array(detail::require(root, "t_grid", ""), "/t_grid");

    if (root.contains("y_mode")) {
        const detail::Json& ym = root["y_mode"];
        if (!ym.is_object()) throw ConfigError("expected an object at /y_mode");
        const std::string kind = detail::string_at(detail::require(ym, "kind", "/y_mode"), "/y_mode/kind");
        if (kind == "levy") {
            detail::reject_unknown_keys(ym, {"kind"}, "/y_mode");
            cfg.scenario.levy_y = true;
        } else if (kind == "random-drift") {
            detail::reject_unknown_keys(ym, {"kind", "values", "probs"}, "/y_mode");
            cfg.scenario.levy_y = false;
            cfg.scenario.y_drift_law.values =
                detail::parse_number_array(detail::require(ym, "values", "/y_mode"), "/y_mode/values");
            cfg.scenario.y_drift_law.probs =
                detail::parse_number_array(detail::require(ym, "probs", "/y_mode"), "/y_mode/probs");
        } else {
            throw ConfigError("unknown y_mode kind '" + kind + "' at /y_mode/kind");
        }
    }

    try {
        if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
        if (root.contains("reps")) cfg.reps = root["reps"].get<std::size_t>();
        if (root.contains("n_max")) cfg.n_max = root["n_max"].get<int>();
        if (root.contains("paths")) cfg.paths = root["paths"].get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("schema violation in seed/reps/n_max/paths: ") + e.what());
    }
    if (root.contains("alphas")) cfg.alphas = detail::parse_number_array(root["alphas"], "/alphas");
    // time defaults shrink with short horizons
    cfg.lst_t = std::min(2.0, cfg.scenario.horizon);
    cfg.order_t = {std::min(0.5, cfg.scenario.horizon / 2.0), std::min(2.0, cfg.scenario.horizon)};
    if (root.contains("lst_t")) cfg.lst_t = detail::number_at(root["lst_t"], "/lst_t");
    if (root.contains("order_t")) {
        const auto v = detail::parse_number_array(root["order_t"], "/order_t");
        if (v.size() != 2) throw ConfigError("/order_t must hold exactly two times");
        cfg.order_t = {v[0], v[1]};
    }
    if (root.contains("quad_tol")) cfg.quad_tol = detail::number_at(root["quad_tol"], "/quad_tol");
    if (root.contains("engine")) {
        if (!root["engine"].is_string()) throw ConfigError("expected a string at /engine");
        const std::string engine = root["engine"].get<std::string>();
        if (engine == "exact")
            cfg.engine = Engine::Exact;
        else if (engine == "gou")
            cfg.engine = Engine::Gou;
        else
            throw ConfigError("unknown engine '" + engine + "' at /engine");
    }
    if (root.contains("gou")) {
        const detail::Json& g = root["gou"];
        if (!g.is_object()) throw ConfigError("expected an object at /gou");
        detail::reject_unknown_keys(g, {"a", "sigma", "h", "jumps"}, "/gou");
        cfg.gou.drift = detail::number_at(detail::require(g, "a", "/gou"), "/gou/a");
        cfg.gou.sigma = detail::number_at(detail::require(g, "sigma", "/gou"), "/gou/sigma");
        if (g.contains("h")) cfg.gou_h = detail::number_at(g["h"], "/gou/h");
        if (g.contains("jumps")) cfg.gou.jumps = detail::parse_components(g["jumps"], "/gou/jumps");
    } else if (cfg.engine == Engine::Gou) {
        throw ConfigError("engine 'gou' requires a /gou section");
    }

    try {
        validate_scenario(cfg.scenario);
        if (cfg.engine == Engine::Gou) validate_gaussian_z(cfg.gou);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.reps < 100) throw ConfigError("/reps must be >= 100");
    if (cfg.n_max < 1 || cfg.n_max > kMaxMomentOrder)
        throw ConfigError("/n_max must lie in 1..12");
    if (!(cfg.quad_tol > 0.0)) throw ConfigError("/quad_tol must be > 0");
    if (cfg.paths < 1) throw ConfigError("/paths must be >= 1");
    if (!(cfg.lst_t >= 0.0 && cfg.lst_t <= cfg.scenario.horizon))
        throw ConfigError("/lst_t must lie in [0, horizon]");
    for (double t : {cfg.order_t[0], cfg.order_t[1]})
        if (!(t >= 0.0 && t <= cfg.scenario.horizon))
            throw ConfigError("/order_t entries must lie in [0, horizon]");
    if (cfg.engine == Engine::Gou && !(cfg.gou_h > 0.0))
        throw ConfigError("/gou/h must be > 0");
    return cfg;
}

/// Canonical serialization: fixed key order, defaults materialized, so it is
/// the stable input of the config hash and round-trips through parse_config.
inline std::string serialize_config(const RunConfig& cfg) {
    detail::Json j;
    j["y"] = detail::subordinator_to_json(cfg.scenario.pair.y);
    j["z"] = detail::subordinator_to_json(cfg.scenario.pair.z);
    if (cfg.scenario.x0.kind == X0Law::Kind::Constant) {
        j["x0"] = {{"kind", "const"}, {"value", cfg.scenario.x0.param}};
    } else {
        j["x0"] = {{"kind", "exp"}, {"mean", cfg.scenario.x0.param}};
    }
    if (cfg.scenario.levy_y) {
        j["y_mode"] = {{"kind", "levy"}};
    } else {
        j["y_mode"] = {{"kind", "random-drift"},
                       {"values", cfg.scenario.y_drift_law.values},
                       {"probs", cfg.scenario.y_drift_law.probs}};
    }
    j["horizon"] = cfg.scenario.horizon;
    j["t_grid"] = cfg.scenario.t_grid;
    j["seed"] = cfg.seed;
    j["reps"] = cfg.reps;
    j["n_max"] = cfg.n_max;
    j["alphas"] = cfg.alphas;
    j["lst_t"] = cfg.lst_t;
    j["order_t"] = {cfg.order_t[0], cfg.order_t[1]};
    j["quad_tol"] = cfg.quad_tol;
    j["paths"] = cfg.paths;
    j["engine"] = cfg.engine == Engine::Exact ? "exact" : "gou";
    if (cfg.engine == Engine::Gou) {
        detail::Json g;
        g["a"] = cfg.gou.drift;
        g["sigma"] = cfg.gou.sigma;
        g["h"] = cfg.gou_h;
        g["jumps"] = detail::subordinator_to_json(
                         SubordinatorSpec{0.0, cfg.gou.jumps})["jumps"];
        j["gou"] = g;
    }
    return j.dump(2);
}

/// FNV-1a 64-bit over the canonical serialization; printed as 16 hex digits
/// in every output file's metadata line.
inline std::string config_hash(const RunConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace linsde
