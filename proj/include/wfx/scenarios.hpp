#pragma once

#include <string>
#include <vector>

#include "wfx/fock.hpp"

namespace wfx {

struct Observable {
    std::string method;  // formula | expansion | oracle (optionally with a suffix)
    std::string name;
    double value = 0.0;
    double leakage = 0.0;  // largest guard-band population seen; 0 for formulas
};

using ObservableSet = std::vector<Observable>;

// leakage above this makes a run invalid
inline constexpr double default_leakage_tol = 1e-6;

struct Su11Config {
    double g = 0.0;          // per stage
    double delta_phi = 0.0;  // phase applied to the signal between the stages
    cplx alpha_p = 5.0;
    int weak_dim = 6;        // classical-pump expansion space, per weak mode
    int pump_dim = 0;        // oracle, 0 picks from the Poisson tail
    int signal_dim = 0;      // oracle, 0 picks from the thermal estimate
    double leakage_tol = default_leakage_tol;
};

struct Su11Point {
    double g = 0.0, delta_phi = 0.0;
    double dN_p = 0.0, dphi_p = 0.0;
    double leakage = 0.0;
};

// Stage-2 closed forms evaluated on stage-1 outputs with a classical pump, consistently to
// second order in the weak fields: <a_p(out)> = alpha + <p2 stage 1> + <p2 stage 2>.
Su11Point su11_expansion(const Su11Config& c);
// U2 Phi(delta_phi) U1 on coherent pump and vacuum signal/idler
Su11Point su11_oracle(const Su11Config& c);
// throws TruncationError when the oracle leaks
ObservableSet su11_run(const Su11Config& c, bool with_oracle);

struct PhaseMap {
    std::vector<double> g, delta_phi;
    std::vector<std::vector<Su11Point>> points;  // [ig][iphi]
};
// expansion path; wrapped phases in (-pi, pi]
PhaseMap pump_phase_map(const std::vector<double>& g_grid, const std::vector<double>& delta_phi_grid, cplx alpha_p);

enum class SfgInput { entangled_su11, coherent_equal };

struct SfgConfig {
    cplx alpha_p = 5.0;
    int pump_dim = 0, signal_dim = 0;  // 0 picks automatically
    double leakage_tol = default_leakage_tol;
};

struct SfgPoint {
    double g = 0.0;
    double eta = 0.0;
    double dN_p = 0.0;      // stage-2 pump change with the prepared input
    double dN_p_vac = 0.0;  // same stage with vacuum signal/idler and a fresh coherent pump
    double n_in = 0.0;
    double phase = 0.0;     // phi_s + phi_i - phi_p of the coherent seeds (coherent_equal only)
    double leakage = 0.0;
};

// phi_s + phi_i - phi_p maximizing classical SFG under H = chi(a_p a_s^dag a_i^dag + h.c.)
double sfg_optimal_phase();

// eta = (dN_p - dN_p_vac) / n_in, oracle throughout
SfgPoint sfg_efficiency_point(double g, SfgInput kind, const SfgConfig& c, double seed_phase);
std::vector<SfgPoint> sfg_efficiency_curve(const std::vector<double>& g_grid, SfgInput kind, const SfgConfig& c = {});

// <N_s(t)> for coherent pump and vacuum signal/idler: order-3 expansion vs oracle
struct PdcConvergence {
    double alpha2 = 0.0, g = 0.0;
    double oracle = 0.0, expansion = 0.0, expansion_o1 = 0.0;
    double rel_gap = 0.0;
    double leakage = 0.0;
};
PdcConvergence pdc_convergence(double alpha2, double g, int pump_dim = 0, int weak_dim = 0);

}  // namespace wfx
