#include "wfx/cli/figures.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "wfx/cli/parallel.hpp"
#include "wfx/quadrature.hpp"
#include "wfx/scenarios.hpp"
#include "wfx/transfer.hpp"

namespace wfx::cli {

namespace {

constexpr double pi = std::numbers::pi;

const char* dir_name(TransferDirection d) {
    return d == TransferDirection::pump_to_signal ? "pump_to_signal" : "signal_to_pump";
}

CsvTable figure1(int threads) {
    std::vector<double> gs, phis;
    for (int j = 0; j <= 20; ++j) gs.push_back(0.05 * j);
    for (int j = 0; j < 36; ++j) phis.push_back(pi * j / 18);
    const cplx alpha(5.0, 0.0);
    auto rows = parallel_map(gs.size(), threads, [&](std::size_t i) {
        std::vector<std::vector<std::string>> out;
        for (double ph : phis) {
            Su11Config c;
            c.g = gs[i];
            c.delta_phi = ph;
            c.alpha_p = alpha;
            Su11Point p = su11_expansion(c);
            out.push_back({fmt(p.g), fmt(p.delta_phi), fmt(std::norm(alpha)), fmt(p.dN_p), fmt(p.dphi_p)});
        }
        return out;
    });
    CsvTable t{{"g", "delta_phi", "alpha_p2", "delta_N_p", "phase_p"}, {}};
    for (auto& r : rows) t.rows.insert(t.rows.end(), r.begin(), r.end());
    return t;
}

CsvTable figure2(int threads) {
    std::vector<double> gs;
    for (int j = 1; j <= 20; ++j) gs.push_back(0.05 * j);
    const SfgInput kinds[] = {SfgInput::entangled_su11, SfgInput::coherent_equal};
    auto curves = parallel_map(2, threads, [&](std::size_t k) {
        SfgConfig c;
        c.alpha_p = 5.0;
        return sfg_efficiency_curve(gs, kinds[k], c);
    });
    CsvTable t{{"input", "g", "alpha_p2", "eta", "delta_N_p", "delta_N_p_vac", "n_in", "seed_phase", "leakage"}, {}};
    for (std::size_t k = 0; k < 2; ++k)
        for (const auto& p : curves[k])
            t.rows.push_back({k == 0 ? "entangled_su11" : "coherent_equal", fmt(p.g), fmt(25.0), fmt(p.eta), fmt(p.dN_p),
                              fmt(p.dN_p_vac), fmt(p.n_in), k == 0 ? "" : fmt(p.phase), fmt(p.leakage)});
    return t;
}

struct TransferPoint {
    TransferDirection dir;
    double alpha_i2, n;
};

std::vector<std::string> transfer_row(const TransferPoint& p) {
    TransferConfig c;
    c.alpha_i = std::sqrt(p.alpha_i2);
    c.source = {SourceKind::coherent, p.n};
    c.direction = p.dir;
    TransferResult r = transfer_loss_and_variance(c, {true, false, false});
    double mean = 0.0, var_opt_gain = 0.0, var_coh = 0.0;
    for (const auto& o : r.rows) {
        if (o.method == "formula_mean") mean = o.value;
        if (o.method == "formula_opt_gain") var_opt_gain = o.value;
        if (o.method == "formula_coherent") var_coh = o.value;
    }
    return {dir_name(p.dir), fmt(p.alpha_i2), fmt(p.n), fmt(r.m), fmt(r.g_opt), fmt(optimal_transfer_gain_approx(r.m, p.dir)),
            fmt(mean - p.n), fmt(var_opt_gain), fmt(var_coh)};
}

const std::vector<std::string> transfer_header = {"direction", "alpha_i2", "source_n", "m", "g_opt", "g_approx",
                                                  "delta_N", "delta_var_opt_gain", "delta_var_coherent"};

CsvTable transfer_figure(const std::vector<TransferPoint>& pts, int threads) {
    auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) { return transfer_row(pts[i]); });
    return {transfer_header, rows};
}

CsvTable figure3(int threads) {
    std::vector<TransferPoint> pts;
    const double ai2 = 100.0;
    for (auto d : {TransferDirection::signal_to_pump, TransferDirection::pump_to_signal})
        for (int j = 0; j <= 30; ++j) pts.push_back({d, ai2, 0.01 * j * ai2});
    return transfer_figure(pts, threads);
}

CsvTable figure4(int threads) {
    std::vector<TransferPoint> pts;
    for (double ai2 : {1e4, 1e5})
        for (auto d : {TransferDirection::signal_to_pump, TransferDirection::pump_to_signal})
            for (int j = 0; j <= 30; ++j) pts.push_back({d, ai2, std::pow(10.0, j / 10.0)});
    return transfer_figure(pts, threads);
}

}  // namespace

CsvTable figure_table(int id, int threads) {
    switch (id) {
        case 1: return figure1(threads);
        case 2: return figure2(threads);
        case 3: return figure3(threads);
        case 4: return figure4(threads);
        default: throw std::invalid_argument("figure id must be 1..4");
    }
}

std::string figure_filename(int id) { return "figure" + std::to_string(id) + ".csv"; }

std::string write_figure(int id, const std::string& out_dir, int threads) {
    CsvTable t = figure_table(id, threads);
    std::string path = (std::filesystem::path(out_dir) / figure_filename(id)).string();
    write_file_atomic(path, t.str());
    return path;
}

}  // namespace wfx::cli
