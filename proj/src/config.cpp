#include "expsum/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace expsum {

namespace {

using nlohmann::json;

std::uint64_t require_u64(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing key: ") + key);
    const json& v = j.at(key);
    if (!v.is_number_unsigned()) {
        throw std::invalid_argument(std::string("key must be a nonnegative integer: ") + key);
    }
    return v.get<std::uint64_t>();
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
    json terms = json::array();
    for (const auto& [a, g] : cfg.terms) terms.push_back({{"a", a}, {"g", g}});
    json delta;
    if (cfg.delta.sqrt_log) {
        delta = {{"policy", "sqrt_log"}};
    } else {
        delta = {{"policy", "fixed"}, {"value", cfg.delta.value}};
    }
    json j = {
        {"field", cfg.field},   {"terms", terms},
        {"b", cfg.b},           {"delta", delta},
        {"seed", cfg.seed},     {"out", cfg.out},
        {"count_cap", cfg.count_cap}, {"brute_cap", cfg.brute_cap},
        {"work_cap", cfg.work_cap},
    };
    return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    RunConfig cfg;
    if (!j.contains("field") || !j.at("field").is_string()) {
        throw std::invalid_argument("missing or non-string key: field");
    }
    cfg.field = j.at("field").get<std::string>();

    if (!j.contains("terms") || !j.at("terms").is_array()) {
        throw std::invalid_argument("missing or non-array key: terms");
    }
    for (const json& t : j.at("terms")) {
        if (!t.is_object()) throw std::invalid_argument("terms entries must be objects");
        cfg.terms.emplace_back(require_u64(t, "a"), require_u64(t, "g"));
    }

    cfg.b = require_u64(j, "b");

    if (!j.contains("delta") || !j.at("delta").is_object()) {
        throw std::invalid_argument("missing or non-object key: delta");
    }
    const json& d = j.at("delta");
    std::string policy = d.value("policy", "");
    if (policy == "sqrt_log") {
        cfg.delta = DeltaPolicy::sqrt_log_default();
    } else if (policy == "fixed") {
        if (!d.contains("value") || !d.at("value").is_number()) {
            throw std::invalid_argument("fixed delta policy needs a numeric value");
        }
        cfg.delta = DeltaPolicy::fixed(d.at("value").get<double>());
    } else {
        throw std::invalid_argument("delta policy must be sqrt_log or fixed");
    }

    cfg.seed = require_u64(j, "seed");
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw std::invalid_argument("key must be a string: out");
        cfg.out = j.at("out").get<std::string>();
    }
    cfg.count_cap = j.contains("count_cap") ? require_u64(j, "count_cap") : kDefaultCountCap;
    cfg.brute_cap = j.contains("brute_cap") ? require_u64(j, "brute_cap") : kDefaultBruteCap;
    cfg.work_cap = j.contains("work_cap") ? require_u64(j, "work_cap") : kDefaultSolveWorkCap;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write config file: " + path);
    out << config_to_json(cfg);
}

EquationInstance instance_from_config(const RunConfig& cfg, const Field& field) {
    if (cfg.terms.empty()) throw std::invalid_argument("config lists no terms");
    std::uint64_t q = field.size();
    for (std::size_t i = 0; i < cfg.terms.size(); ++i) {
        auto [a, g] = cfg.terms[i];
        if (a == 0 || a >= q) {
            throw std::invalid_argument("coefficient out of range in term " + std::to_string(i + 1) +
                                        ": " + std::to_string(a));
        }
        if (g == 0 || g >= q) {
            throw std::invalid_argument("base out of range in term " + std::to_string(i + 1) + ": " +
                                        std::to_string(g));
        }
    }
    if (cfg.b >= q) {
        throw std::invalid_argument("target out of range: " + std::to_string(cfg.b));
    }
    return EquationInstance(field, cfg.terms, cfg.b);
}

}  // namespace expsum
