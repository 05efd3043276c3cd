#include "rotorbath/cli.hpp"
#include "rotorbath/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace rotorbath::cli {

namespace {

using Setter = std::function<void(ParamSet&, const nlohmann::json&)>;

double as_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError(key + " must be a number");
    return v.get<double>();
}

int as_int(const nlohmann::json& v, const std::string& key) {
    const double x = as_number(v, key);
    if (x != std::floor(x) || std::abs(x) > 2e9) throw ConfigError(key + " must be an integer");
    return static_cast<int>(x);
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"K", [](ParamSet& p, const nlohmann::json& v) { p.rotor.kick_strength = as_number(v, "K"); }},
        {"hbar", [](ParamSet& p, const nlohmann::json& v) { p.rotor.hbar = as_number(v, "hbar"); }},
        {"eta", [](ParamSet& p, const nlohmann::json& v) { p.bath.eta = as_number(v, "eta"); }},
        {"omega_c", [](ParamSet& p, const nlohmann::json& v) { p.bath.omega_c = as_number(v, "omega_c"); }},
        {"beta", [](ParamSet& p, const nlohmann::json& v) { p.bath.beta = as_number(v, "beta"); }},
        {"phi_prime", [](ParamSet& p, const nlohmann::json& v) { p.bath.phi_prime = as_number(v, "phi_prime"); }},
        {"l_max", [](ParamSet& p, const nlohmann::json& v) { p.numerics.l_max = as_int(v, "l_max"); }},
        {"nq", [](ParamSet& p, const nlohmann::json& v) { p.numerics.nq = as_int(v, "nq"); }},
        {"np_grid", [](ParamSet& p, const nlohmann::json& v) { p.numerics.np_grid = as_int(v, "np_grid"); }},
        {"p_extent", [](ParamSet& p, const nlohmann::json& v) { p.numerics.p_extent = as_number(v, "p_extent"); }},
        {"band_tol", [](ParamSet& p, const nlohmann::json& v) { p.numerics.band_tol = as_number(v, "band_tol"); }},
        {"eig_floor", [](ParamSet& p, const nlohmann::json& v) { p.numerics.eig_floor = as_number(v, "eig_floor"); }},
        {"product_tol",
         [](ParamSet& p, const nlohmann::json& v) { p.numerics.product_tol = as_number(v, "product_tol"); }},
        {"coherence_tol",
         [](ParamSet& p, const nlohmann::json& v) { p.numerics.coherence_tol = as_number(v, "coherence_tol"); }},
        {"kicks", [](ParamSet& p, const nlohmann::json& v) { p.run.kicks = as_int(v, "kicks"); }},
        {"packet_width",
         [](ParamSet& p, const nlohmann::json& v) { p.run.packet_width = as_number(v, "packet_width"); }},
        {"p_center", [](ParamSet& p, const nlohmann::json& v) { p.run.p_center = as_number(v, "p_center"); }},
        {"q_center", [](ParamSet& p, const nlohmann::json& v) { p.run.q_center = as_number(v, "q_center"); }},
        {"fit_min", [](ParamSet& p, const nlohmann::json& v) { p.run.fit_min = as_int(v, "fit_min"); }},
        {"seed",
         [](ParamSet& p, const nlohmann::json& v) {
             if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                 throw ConfigError("seed must be a non-negative integer");
             p.run.seed = v.get<unsigned long long>();
         }},
    };
    return table;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_json(ParamSet& params, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    std::vector<std::string> problems;
    for (const auto& [key, value] : j.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) {
            problems.push_back("unknown config key '" + key + "'");
            continue;
        }
        if (value.is_null()) continue; // keep the default
        try {
            it->second(params, value);
        } catch (const ConfigError& e) {
            problems.emplace_back(e.what());
        }
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
}

void apply_override(ParamSet& params, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        throw ConfigError("value for " + key + " is not a number: '" + text + "'");
    }
    apply_json(params, nlohmann::json{{key, value}});
}

ParamSet load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed config " + path.string() + ": " + e.what());
    }
    ParamSet p;
    apply_json(p, j);
    return p;
}

nlohmann::json to_json(const ValidatedConfig& cfg) {
    const auto& n = cfg.numerics();
    return {
        {"K", cfg.rotor().kick_strength},
        {"hbar", cfg.rotor().hbar},
        {"eta", cfg.bath().eta},
        {"omega_c", cfg.omega_c()},
        {"beta", cfg.bath().beta},
        {"phi_prime", cfg.bath().phi_prime},
        {"l_max", cfg.l_max()},
        {"nq", n.nq},
        {"np_grid", n.np_grid},
        {"p_extent", cfg.p_extent()},
        {"band_tol", n.band_tol},
        {"eig_floor", n.eig_floor},
        {"product_tol", n.product_tol},
        {"coherence_tol", n.coherence_tol},
        {"kicks", cfg.run().kicks},
        {"packet_width", cfg.run().packet_width},
        {"p_center", cfg.p_center()},
        {"q_center", cfg.run().q_center},
        {"fit_min", cfg.run().fit_min},
        {"seed", cfg.run().seed},
    };
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("ROTORBATH_THREADS")) {
        int cap = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec != std::errc{} || ptr != s.data() + s.size() || cap < 1)
            throw ConfigError("ROTORBATH_THREADS must be a positive integer");
        return cap;
    }
    return hw;
}

} // namespace rotorbath::cli
