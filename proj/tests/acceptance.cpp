// One line per acceptance criterion. Criterion 10 is a known failure (see README) and does not
// change the exit status; any other FAIL does.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "wfx/bch.hpp"
#include "wfx/cli/figures.hpp"
#include "wfx/cli/runner.hpp"
#include "wfx/oracle.hpp"
#include "wfx/quadrature.hpp"
#include "wfx/scenarios.hpp"
#include "wfx/transfer.hpp"

using namespace wfx;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

int unexpected = 0;

void criterion(int id, const char* name, double max_seconds, bool known_failure, const std::function<Outcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < max_seconds;
    const bool pass = o.pass && in_time;
    std::printf("criterion %2d %-32s %s  %s  [%.2fs, limit %.0fs]%s\n", id, name, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                max_seconds, known_failure && !pass ? "  (known failure)" : "");
    std::fflush(stdout);
    if (!pass && !known_failure) ++unexpected;
}

std::string num(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

}  // namespace

int main() {
    criterion(1, "fock algebra", 1, false, [] {
        FockSpace s = make_space({{Role::pump, 12}, {Role::signal, 6}, {Role::idler, 6}});
        auto inner = guard_mask(s, 1);
        double worst = 0.0;
        for (int m = 0; m < 3; ++m) {
            SpMat a = annihilation(s, m).mat, ad = creation(s, m).mat;
            worst = std::max(worst, max_entry_gap(SpMat(a * ad - ad * a - identity(s)), inner));
            worst = std::max(worst, max_abs(SpMat(ad * a - number_op(s, m).mat)));
            for (int n = 0; n < 3; ++n) {
                if (n == m) continue;
                SpMat b = annihilation(s, n).mat, bd = creation(s, n).mat;
                worst = std::max(worst, max_abs(SpMat(a * b - b * a)));
                worst = std::max(worst, max_abs(SpMat(a * bd - bd * a)));
            }
        }
        return Outcome{worst <= 1e-12, "max entry gap " + num("%.2e", worst)};
    });

    criterion(2, "oracle conservation", 30, false, [] {
        FockSpace s = make_space({{Role::pump, 40}, {Role::signal, 20}, {Role::idler, 20}});
        Propagator u(make_hamiltonian(s, 1.0));
        Vec psi0 = coherent_state(s, 0, 4.0, 1e-6).amps;
        SpMat d1 = number_op(s, 1).mat - number_op(s, 2).mat, d2 = number_op(s, 0).mat + number_op(s, 1).mat;
        const double c1 = expect_real(psi0, d1), c2 = expect_real(psi0, d2);
        double worst = 0.0;
        for (int j = 0; j <= 30; ++j) {
            Vec psi = u.evolve(psi0, 0.05 * j / 4.0);
            worst = std::max({worst, std::abs(expect_real(psi, d1) - c1), std::abs(expect_real(psi, d2) - c2)});
        }
        return Outcome{worst <= 1e-9, "max drift " + num("%.2e", worst)};
    });

    criterion(3, "bch cross-check", 60, false, [] {
        double worst = 0.0;
        for (const auto& r : bch_report(4, 2)) worst = std::max(worst, r.filtered_gap);
        return Outcome{worst <= 1e-7, "max degree-filtered gap " + num("%.2e", worst)};
    });

    criterion(4, "pdc expansion convergence", 120, false, [] {
        PdcConvergence a = pdc_convergence(9.0, 0.5), b = pdc_convergence(25.0, 0.5);
        const bool ok = a.rel_gap <= 3.0 / 9 && b.rel_gap <= 3.0 / 25 && b.rel_gap < a.rel_gap;
        return Outcome{ok, "rel gap " + num("%.2e", a.rel_gap) + " (P=9), " + num("%.2e", b.rel_gap) + " (P=25)"};
    });

    criterion(5, "su11 pump preserved at pi", 120, false, [] {
        double e = 0.0, o = 0.0;
        for (double g : {0.2, 0.6, 1.0}) {
            Su11Config c;
            c.g = g;
            c.delta_phi = pi;
            e = std::max(e, std::abs(su11_expansion(c).dN_p));
            Su11Point p = su11_oracle(c);
            if (p.leakage > c.leakage_tol) throw TruncationError("su11 oracle leakage", p.leakage);
            o = std::max(o, std::abs(p.dN_p));
        }
        return Outcome{e <= 1e-8 && o <= 5.0 / 25, "expansion " + num("%.2e", e) + ", oracle " + num("%.2e", o)};
    });

    criterion(6, "sfg efficiency", 120, false, [] {
        std::vector<double> gs;
        for (int j = 1; j <= 10; ++j) gs.push_back(0.05 * j);
        double worst = 1e9;
        for (const auto& p : sfg_efficiency_curve(gs, SfgInput::entangled_su11)) worst = std::min(worst, p.eta);
        const double coh = sfg_efficiency_curve({0.05}, SfgInput::coherent_equal).front().eta;
        return Outcome{worst >= 0.95 && coh <= 0.1, "entangled min eta " + num("%.5f", worst) + ", coherent eta(0.05) " + num("%.4f", coh)};
    });

    criterion(7, "transfer photon loss", 300, false, [] {
        TransferConfig c;
        c.source = {SourceKind::fock, 1.0};
        c.idler_dim = 60;
        TransferResult r = transfer_loss_and_variance(c, {false, false, true});
        double n = 0.0;
        for (const auto& o : r.rows)
            if (o.name == "N_target_mean") n = o.value;
        return Outcome{std::abs(n - 0.975) <= 0.008, "oracle <N_s> " + num("%.5f", n)};
    });

    criterion(8, "optimal gain", 1, false, [] {
        double approx = 0.0, rel = 0.0;
        for (int j = 0; j <= 10; ++j) {
            const double m = 0.01 * j;
            const double sp = optimal_transfer_gain(m, TransferDirection::signal_to_pump);
            const double ps = optimal_transfer_gain(m, TransferDirection::pump_to_signal);
            approx = std::max(approx, std::abs(sp - pi / 2 * (1 + m / 4)) / sp);
            rel = std::max(rel, std::abs(ps * std::sqrt(1 + m) - sp));
        }
        return Outcome{approx <= 0.005 && rel <= 1e-10, "approx rel gap " + num("%.2e", approx) + ", relation " + num("%.1e", rel)};
    });

    criterion(9, "moment engine", 10, false, [] {
        cli::RunConfig c;
        c.scenario = cli::ScenarioId::moments_report;
        c.grids.alpha_p2 = {4, 9, 25};
        c.l_max = 6;
        cli::RunResult r = cli::execute(c);
        double bad = 0.0;
        for (const auto& rec : r.records)
            if (rec.observable == "def_R_failures") bad = rec.value_re;
        return Outcome{r.summary.pass && bad == 0.0, "def_R failures " + num("%.0f", bad) + ", " + r.summary.line()};
    });

    criterion(10, "variance correction", 300, true, [] {
        TransferConfig c;
        c.alpha_i = 10.0;
        c.source = {SourceKind::coherent, 4.0};
        TransferResult r = transfer_loss_and_variance(c, {true, false, true});
        double f = 0.0, o = 0.0, m = 0.0;
        for (const auto& row : r.rows) {
            if (row.name != "delta_var") continue;
            if (row.method == "formula_coherent") f = row.value;
            if (row.method == "oracle") o = row.value;
            if (row.method == "formula_opt_gain") m = row.value;
        }
        const double rel = std::abs(f - o) / std::abs(o);
        return Outcome{rel <= 0.25, "formula " + num("%.4f", f) + ", oracle " + num("%.4f", o) + ", rel gap " + num("%.2f", rel) +
                                        "; optimal-gain pair " + num("%.4f", m)};
    });

    criterion(11, "figure determinism", 600, false, [] {
        const bool same = cli::figure_table(1, 1).str() == cli::figure_table(1, 8).str();
        return Outcome{same, same ? "byte-identical" : "outputs differ"};
    });

    std::printf("%s\n", unexpected == 0 ? "acceptance: all criteria as expected" : "acceptance: unexpected failures");
    return unexpected == 0 ? 0 : 1;
}
