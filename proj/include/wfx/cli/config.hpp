#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wfx::cli {

inline constexpr int schema_version = 1;

enum class ScenarioId { su11_map, sfg_efficiency, transfer, bch_report, moments_report };

std::string scenario_name(ScenarioId s);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Grids {
    std::vector<double> g{0.3};
    std::vector<double> delta_phi{0.0};
    std::vector<double> alpha_p2{25.0};  // |alpha_p|^2
    std::vector<double> alpha_i2{25.0};  // |alpha_i|^2
    std::vector<double> source_n{1.0};   // photon number or |alpha_source|^2
    bool operator==(const Grids&) const = default;
};

struct Truncation {
    int pump_dim = 0, signal_dim = 0, idler_dim = 0, source_dim = 0;  // 0 = automatic
    int weak_dim = 6;                                                  // classical-pump expansion
    int guard_band = 2;
    bool operator==(const Truncation&) const = default;
};

struct Tolerances {
    double leakage = 1e-6;
    double su11_oracle = 5.0;        // |dN_p expansion - oracle| <= this / |alpha_p|^2
    double eta_min = 0.95;           // entangled SFG input
    double transfer_mean_rel = 0.01; // loss formula vs oracle
    double transfer_var_rel = 0.25;  // chosen variance formula vs oracle delta_var
    double bch = 1e-7;               // degree-filtered entry gap
    bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
    int schema = schema_version;
    ScenarioId scenario = ScenarioId::su11_map;
    std::string output = "out.csv";
    int threads = 1;
    Grids grids;
    Truncation truncation;
    Tolerances tolerances;
    bool oracle = true;
    std::string sfg_input = "entangled_su11";         // or coherent_equal
    std::string source_kind = "fock";                 // or coherent
    std::string direction = "pump_to_signal";         // or signal_to_pump
    std::string variance_formula = "formula_opt_gain"; // compared with the oracle delta_var
    int k_max = 4;
    int l_max = 4;
    bool operator==(const RunConfig&) const = default;
};

// JSON text; unknown keys, wrong types, empty grids and bad enum strings throw ConfigError
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

}  // namespace wfx::cli
