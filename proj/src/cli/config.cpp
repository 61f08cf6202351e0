#include "wfx/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wfx::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<ScenarioId, std::string>> scenario_names = {
    {ScenarioId::su11_map, "su11_map"},         {ScenarioId::sfg_efficiency, "sfg_efficiency"},
    {ScenarioId::transfer, "transfer"},         {ScenarioId::bch_report, "bch_report"},
    {ScenarioId::moments_report, "moments_report"},
};

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
void read(const json& j, const std::string& key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, int>) {
            if (!v.is_number_integer()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError("");
        } else {
            if (!v.is_array()) throw ConfigError("");
            for (const auto& e : v)
                if (!e.is_number()) throw ConfigError("");
        }
        out = v.get<T>();
    } catch (const std::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

void one_of(const std::string& v, const std::string& key, const std::set<std::string>& allowed) {
    if (!allowed.count(v)) throw ConfigError(key + ": unsupported value '" + v + "'");
}

void validate(const RunConfig& c) {
    auto nonempty = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw ConfigError(std::string("grids.") + name + " must not be empty");
    };
    nonempty(c.grids.g, "g");
    nonempty(c.grids.delta_phi, "delta_phi");
    nonempty(c.grids.alpha_p2, "alpha_p2");
    nonempty(c.grids.alpha_i2, "alpha_i2");
    nonempty(c.grids.source_n, "source_n");
    for (double g : c.grids.g)
        if (!(g >= 0.0)) throw ConfigError("grids.g entries must be >= 0");
    for (double a : c.grids.alpha_p2)
        if (!(a > 0.0)) throw ConfigError("grids.alpha_p2 entries must be > 0");
    for (double a : c.grids.alpha_i2)
        if (!(a > 0.0)) throw ConfigError("grids.alpha_i2 entries must be > 0");
    for (double n : c.grids.source_n)
        if (!(n >= 0.0)) throw ConfigError("grids.source_n entries must be >= 0");
    const Tolerances& t = c.tolerances;
    for (double v : {t.leakage, t.su11_oracle, t.eta_min, t.transfer_mean_rel, t.transfer_var_rel, t.bch})
        if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
    if (c.output.empty()) throw ConfigError("output must not be empty");
    if (c.k_max < 0 || c.k_max > 6) throw ConfigError("k_max must be in 0..6");
    if (c.l_max < 0 || c.l_max > 12) throw ConfigError("l_max must be in 0..12");
    const Truncation& tr = c.truncation;
    for (int d : {tr.pump_dim, tr.signal_dim, tr.idler_dim, tr.source_dim})
        if (d < 0 || d == 1 || d == 2) throw ConfigError("truncation dims must be 0 (automatic) or >= 3");
    if (tr.weak_dim < 3) throw ConfigError("truncation.weak_dim must be >= 3");
    if (tr.guard_band < 0) throw ConfigError("truncation.guard_band must be >= 0");
    one_of(c.sfg_input, "sfg_input", {"entangled_su11", "coherent_equal"});
    one_of(c.source_kind, "source_kind", {"fock", "coherent"});
    one_of(c.direction, "direction", {"pump_to_signal", "signal_to_pump"});
    one_of(c.variance_formula, "variance_formula", {"formula_opt_gain", "formula_general", "formula_coherent"});
}

}  // namespace

std::string scenario_name(ScenarioId s) {
    for (const auto& [id, n] : scenario_names)
        if (id == s) return n;
    throw std::logic_error("unknown scenario");
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    only_keys(j, "config",
              {"schema", "scenario", "output", "threads", "grids", "truncation", "tolerances", "oracle", "sfg_input",
               "source_kind", "direction", "variance_formula", "k_max", "l_max"});
    RunConfig c;
    if (!j.contains("schema")) throw ConfigError("config: missing 'schema'");
    read(j, "schema", c.schema, "config");
    if (c.schema != schema_version) throw ConfigError("config: unsupported schema " + std::to_string(c.schema));
    if (!j.contains("scenario")) throw ConfigError("config: missing 'scenario'");
    std::string sc;
    read(j, "scenario", sc, "config");
    bool found = false;
    for (const auto& [id, n] : scenario_names)
        if (n == sc) c.scenario = id, found = true;
    if (!found) throw ConfigError("config: unknown scenario '" + sc + "'");

    read(j, "output", c.output, "config");
    read(j, "threads", c.threads, "config");
    read(j, "oracle", c.oracle, "config");
    read(j, "sfg_input", c.sfg_input, "config");
    read(j, "source_kind", c.source_kind, "config");
    read(j, "direction", c.direction, "config");
    read(j, "variance_formula", c.variance_formula, "config");
    read(j, "k_max", c.k_max, "config");
    read(j, "l_max", c.l_max, "config");
    if (j.contains("grids")) {
        const json& g = j.at("grids");
        only_keys(g, "grids", {"g", "delta_phi", "alpha_p2", "alpha_i2", "source_n"});
        read(g, "g", c.grids.g, "grids");
        read(g, "delta_phi", c.grids.delta_phi, "grids");
        read(g, "alpha_p2", c.grids.alpha_p2, "grids");
        read(g, "alpha_i2", c.grids.alpha_i2, "grids");
        read(g, "source_n", c.grids.source_n, "grids");
    }
    if (j.contains("truncation")) {
        const json& t = j.at("truncation");
        only_keys(t, "truncation", {"pump_dim", "signal_dim", "idler_dim", "source_dim", "weak_dim", "guard_band"});
        read(t, "pump_dim", c.truncation.pump_dim, "truncation");
        read(t, "signal_dim", c.truncation.signal_dim, "truncation");
        read(t, "idler_dim", c.truncation.idler_dim, "truncation");
        read(t, "source_dim", c.truncation.source_dim, "truncation");
        read(t, "weak_dim", c.truncation.weak_dim, "truncation");
        read(t, "guard_band", c.truncation.guard_band, "truncation");
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        only_keys(t, "tolerances", {"leakage", "su11_oracle", "eta_min", "transfer_mean_rel", "transfer_var_rel", "bch"});
        read(t, "leakage", c.tolerances.leakage, "tolerances");
        read(t, "su11_oracle", c.tolerances.su11_oracle, "tolerances");
        read(t, "eta_min", c.tolerances.eta_min, "tolerances");
        read(t, "transfer_mean_rel", c.tolerances.transfer_mean_rel, "tolerances");
        read(t, "transfer_var_rel", c.tolerances.transfer_var_rel, "tolerances");
        read(t, "bch", c.tolerances.bch, "tolerances");
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["schema"] = c.schema;
    j["scenario"] = scenario_name(c.scenario);
    j["output"] = c.output;
    j["threads"] = c.threads;
    j["oracle"] = c.oracle;
    j["sfg_input"] = c.sfg_input;
    j["source_kind"] = c.source_kind;
    j["direction"] = c.direction;
    j["variance_formula"] = c.variance_formula;
    j["k_max"] = c.k_max;
    j["l_max"] = c.l_max;
    j["grids"] = {{"g", c.grids.g},
                  {"delta_phi", c.grids.delta_phi},
                  {"alpha_p2", c.grids.alpha_p2},
                  {"alpha_i2", c.grids.alpha_i2},
                  {"source_n", c.grids.source_n}};
    j["truncation"] = {{"pump_dim", c.truncation.pump_dim},     {"signal_dim", c.truncation.signal_dim},
                       {"idler_dim", c.truncation.idler_dim},   {"source_dim", c.truncation.source_dim},
                       {"weak_dim", c.truncation.weak_dim},     {"guard_band", c.truncation.guard_band}};
    j["tolerances"] = {{"leakage", c.tolerances.leakage},
                       {"su11_oracle", c.tolerances.su11_oracle},
                       {"eta_min", c.tolerances.eta_min},
                       {"transfer_mean_rel", c.tolerances.transfer_mean_rel},
                       {"transfer_var_rel", c.tolerances.transfer_var_rel},
                       {"bch", c.tolerances.bch}};
    return j.dump(2) + "\n";
}

}  // namespace wfx::cli
