#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "wfx/cli/config.hpp"
#include "wfx/cli/csv.hpp"
#include "wfx/cli/figures.hpp"
#include "wfx/cli/parallel.hpp"
#include "wfx/cli/runner.hpp"

using namespace wfx::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("wfx_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') out.push_back(cur), cur.clear();
        else cur += ch;
    }
    out.push_back(cur);
    return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) rows.push_back(split(line));
    return rows;
}

int run_config(const TempDir& d, const std::string& json, std::string* err_text = nullptr) {
    write(d.file("cfg.json"), json);
    std::ostringstream out, err;
    int rc = run(d.file("cfg.json"), out, err);
    if (err_text) *err_text = err.str();
    return rc;
}

std::string su11_json(const std::string& out, const std::string& extra) {
    return R"({"schema": 1, "scenario": "su11_map", "output": ")" + out + "\"" + extra + "}";
}

}  // namespace

TEST(Config, RoundTrip) {
    RunConfig c;
    c.scenario = ScenarioId::transfer;
    c.output = "x/y.csv";
    c.threads = 3;
    c.grids.g = {0.1, 0.2};
    c.grids.source_n = {1, 2, 3};
    c.truncation.idler_dim = 40;
    c.tolerances.transfer_var_rel = 0.5;
    c.source_kind = "coherent";
    c.direction = "signal_to_pump";
    c.variance_formula = "formula_general";
    c.oracle = false;
    c.k_max = 3;
    RunConfig back = parse_config(serialize_config(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize_config(back), serialize_config(c));
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_config("{"), ConfigError);
    EXPECT_THROW(parse_config(R"({"scenario": "su11_map"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 2, "scenario": "su11_map"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "nope"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "colour": 1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "grids": {"g": [0.1], "h": [1]}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "grids": {"g": "0.1"}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "grids": {"g": []}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "threads": 1.5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "direction": "sideways"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"schema": 1, "scenario": "su11_map", "truncation": {"pump_dim": 2}})"), ConfigError);
    EXPECT_NO_THROW(parse_config(R"({"schema": 1, "scenario": "bch_report"})"));
}

TEST(Csv, Formatting) {
    EXPECT_EQ(fmt(0.1), "1.00000000000e-01");
    EXPECT_EQ(fmt(-2.5e-7), "-2.50000000000e-07");
    EXPECT_EQ(fmt(std::nan("")), "");
    ResultRecord r;
    r.scenario = "s";
    r.method = "m";
    r.observable = "a,b";
    std::string text = records_csv({r});
    EXPECT_EQ(text.substr(0, text.find('\n')), record_header);
    EXPECT_NE(text.find("\"a,b\""), std::string::npos);
    EXPECT_THROW((CsvTable{{"a", "b"}, {{"1"}}}.str()), std::logic_error);
}

TEST(Csv, AtomicWrite) {
    TempDir d;
    write_file_atomic(d.file("sub/out.csv"), "x\n");
    EXPECT_EQ(slurp(d.file("sub/out.csv")), "x\n");
    EXPECT_FALSE(fs::exists(d.file("sub/out.csv.partial")));
}

TEST(Run, MalformedConfigExitsTwoWithoutCsv) {
    TempDir d;
    EXPECT_EQ(run_config(d, "{\"schema\": 1, "), exit_parse);
    EXPECT_EQ(run_config(d, su11_json(d.file("o.csv"), R"(, "grid": {})")), exit_parse);
    EXPECT_FALSE(fs::exists(d.file("o.csv")));
    std::ostringstream out, err;
    EXPECT_EQ(run(d.file("missing.json"), out, err), exit_parse);
}

TEST(Run, Su11ZeroGain) {
    TempDir d;
    const std::string out = d.file("su.csv");
    EXPECT_EQ(run_config(d, su11_json(out, R"(, "grids": {"g": [0], "delta_phi": [0, 1, 3.14159]})")), exit_ok);
    auto rows = csv_rows(slurp(out));
    ASSERT_EQ(rows.size(), 1u + 3 * 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][0], "su11_map");
        EXPECT_LE(std::abs(std::stod(rows[i][9])), 1e-12);
    }
}

TEST(Run, Su11ToleranceAndLeakage) {
    TempDir d;
    const std::string out = d.file("su.csv");
    EXPECT_EQ(run_config(d, su11_json(out, R"(, "tolerances": {"su11_oracle": 1e-9})")), exit_tolerance);
    EXPECT_TRUE(fs::exists(out));
    fs::remove(out);
    std::string err;
    EXPECT_EQ(run_config(d, su11_json(out, R"(, "truncation": {"pump_dim": 30})"), &err), exit_leakage);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_NE(err.find("leakage"), std::string::npos);
}

TEST(Run, TransferLossRow) {
    TempDir d;
    const std::string out = d.file("t.csv");
    const std::string cfg = R"({"schema": 1, "scenario": "transfer", "output": ")" + out +
                            R"(", "grids": {"alpha_i2": [25], "source_n": [1]}, "variance_formula": "formula_general"})";
    EXPECT_EQ(run_config(d, cfg), exit_ok);
    bool seen = false;
    for (const auto& r : csv_rows(slurp(out)))
        if (r[7] == "formula_loss" && r[8] == "N_target_mean") {
            EXPECT_NEAR(std::stod(r[9]), 0.97533, 5e-6);
            EXPECT_LE(std::abs(std::stod(r[12])), 0.01);
            seen = true;
        }
    EXPECT_TRUE(seen);
}

TEST(Run, SfgNeedsPositiveGain) {
    TempDir d;
    const std::string cfg = R"({"schema": 1, "scenario": "sfg_efficiency", "output": ")" + d.file("s.csv") +
                            R"(", "grids": {"g": [0, 0.1]}})";
    EXPECT_EQ(run_config(d, cfg), exit_parse);
}

TEST(Run, ExecuteReportsForBchAndMoments) {
    RunConfig c;
    c.scenario = ScenarioId::bch_report;
    RunResult b = execute(c);
    EXPECT_TRUE(b.summary.pass);
    EXPECT_EQ(b.records.size(), 2 * b.summary.points);
    c.scenario = ScenarioId::moments_report;
    c.grids.alpha_p2 = {4, 9, 25};
    RunResult m = execute(c);
    EXPECT_TRUE(m.summary.pass) << m.summary.line();
    EXPECT_NE(m.summary.line().find("PASS"), std::string::npos);
}

TEST(Threads, EnvironmentOverride) {
    ::setenv("WFX_THREADS", "5", 1);
    EXPECT_EQ(effective_threads(1), 5);
    ::setenv("WFX_THREADS", "zero", 1);
    EXPECT_EQ(effective_threads(2), 2);
    ::unsetenv("WFX_THREADS");
    EXPECT_EQ(effective_threads(0), 1);
}

TEST(Threads, ParallelMapKeepsOrderAndRethrows) {
    auto v = parallel_map(100, 8, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
    EXPECT_THROW(parallel_map(10, 4, [](std::size_t i) -> int {
                     if (i == 7) throw std::runtime_error("seven");
                     return 0;
                 }),
                 std::runtime_error);
}

TEST(Figures, OneIsDeterministicAcrossThreadCounts) {
    CsvTable a = figure_table(1, 1), b = figure_table(1, 8);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.rows.size(), 21u * 36u);
    for (const auto& r : a.rows)
        if (std::abs(std::stod(r[1]) - std::numbers::pi) < 1e-12) EXPECT_LE(std::abs(std::stod(r[3])), 1e-8);
}

TEST(Figures, ThreeStartsAtHalfPi) {
    CsvTable t = figure_table(3, 4);
    int seen = 0;
    for (const auto& r : t.rows)
        if (std::stod(r[3]) == 0.0) {
            EXPECT_NEAR(std::stod(r[4]), std::numbers::pi / 2, 1e-11);
            ++seen;
        }
    EXPECT_EQ(seen, 2);
}

TEST(Figures, FourDirectionsNearlyOverlapAtLargeIdler) {
    CsvTable t = figure_table(4, 4);
    std::map<std::string, std::map<std::string, double>> curve;
    for (const auto& r : t.rows)
        if (std::stod(r[1]) == 1e5) curve[r[0]][r[2]] = std::stod(r[7]);
    ASSERT_EQ(curve.size(), 2u);
    for (const auto& [n, v] : curve["pump_to_signal"]) {
        const double w = curve["signal_to_pump"].at(n);
        EXPECT_LE(std::abs(v - w), 0.05 * std::max(std::abs(v), std::abs(w))) << n;
    }
    EXPECT_EQ(figure_filename(4), "figure4.csv");
    EXPECT_THROW(figure_table(5, 1), std::invalid_argument);
}
