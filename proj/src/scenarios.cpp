#include "wfx/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wfx/expansion.hpp"
#include "wfx/oracle.hpp"

namespace wfx {

namespace {

double wrap_phase(double x) {
    x = std::remainder(x, 2.0 * std::numbers::pi);
    return x <= -std::numbers::pi ? x + 2.0 * std::numbers::pi : x;
}

void apply_mode_phase(const FockSpace& s, Vec& psi, int mode, double phi) {
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        psi(i) *= std::polar(1.0, phi * s.occupation(static_cast<std::size_t>(i), mode));
}

void check_leakage(double leak, double tol, const char* what) {
    if (leak > tol) throw TruncationError(std::string(what) + ": guard-band population above tolerance", leak);
}

// dims for pump/signal/idler oracle spaces of the PDC family
struct PdcDims {
    int pump, weak;
};

PdcDims pick_dims(double alpha2, double weak_mean, int pump_dim, int weak_dim, double tol) {
    PdcDims d;
    d.pump = pump_dim > 0 ? pump_dim : poisson_dim(alpha2, tol) + 4 + static_cast<int>(std::ceil(2.0 * weak_mean));
    d.weak = weak_dim > 0 ? weak_dim : thermal_dim(weak_mean, tol);
    return d;
}

}  // namespace

Su11Point su11_expansion(const Su11Config& c) {
    if (!(c.g >= 0.0)) throw std::invalid_argument("g must be >= 0");
    const double amp = std::abs(c.alpha_p);
    if (!(amp > 0.0)) throw std::invalid_argument("alpha_p must be nonzero");
    FockSpace w = make_space({{Role::signal, c.weak_dim}, {Role::idler, c.weak_dim}});
    const cplx chi_t = c.g / amp;

    PdcInputs in1 = pdc_inputs_classical(w, c.alpha_p, chi_t);
    PdcOrder1 o1 = pdc_order1_weak(in1);
    SpMat p2 = pdc_order2_pump(in1, KerrForm::single_pair).total();

    PdcInputs in2 = pdc_inputs_classical(w, c.alpha_p, chi_t);
    in2.as[0] = std::polar(1.0, c.delta_phi) * o1.signal;
    in2.ai[0] = o1.idler;
    p2 += pdc_order2_pump(in2, KerrForm::single_pair).total();

    Vec vac = fock_state(w, {0, 0}).amps;
    const cplx corr = expect(vac, p2);
    Su11Point r;
    r.g = c.g;
    r.delta_phi = c.delta_phi;
    r.dN_p = 2.0 * std::real(std::conj(c.alpha_p) * corr);
    r.dphi_p = wrap_phase(std::arg(c.alpha_p + corr) - std::arg(c.alpha_p));
    return r;
}

Su11Point su11_oracle(const Su11Config& c) {
    if (!(c.g >= 0.0)) throw std::invalid_argument("g must be >= 0");
    const double amp = std::abs(c.alpha_p);
    if (!(amp > 0.0)) throw std::invalid_argument("alpha_p must be nonzero");
    const double tol = c.leakage_tol * 1e-2;
    const double sh2 = std::pow(std::sinh(c.g), 2);
    const double out_mean = 0.5 * std::pow(std::sinh(2.0 * c.g), 2) * (1.0 + std::cos(c.delta_phi));
    PdcDims d = pick_dims(std::norm(c.alpha_p), std::max(sh2, out_mean), c.pump_dim, c.signal_dim, tol);
    FockSpace s = make_space({{Role::pump, d.pump}, {Role::signal, d.weak}, {Role::idler, d.weak}});
    Propagator u(make_hamiltonian(s, 1.0));
    const double t = c.g / amp;

    StateVector in = coherent_state(s, 0, c.alpha_p, 1.0);
    Vec psi = u.evolve(in.amps, t);
    double leak = std::max(in.leakage, guard_leakage(s, psi));
    apply_mode_phase(s, psi, 1, c.delta_phi);
    psi = u.evolve(psi, t);
    leak = std::max(leak, guard_leakage(s, psi));

    SpMat np = number_op(s, 0).mat, ap = annihilation(s, 0).mat;
    Su11Point r;
    r.g = c.g;
    r.delta_phi = c.delta_phi;
    r.dN_p = expect_real(psi, np) - expect_real(in.amps, np);
    r.dphi_p = wrap_phase(std::arg(expect(psi, ap)) - std::arg(expect(in.amps, ap)));
    r.leakage = leak;
    return r;
}

ObservableSet su11_run(const Su11Config& c, bool with_oracle) {
    ObservableSet out;
    Su11Point e = su11_expansion(c);
    out.push_back({"expansion", "delta_N_p", e.dN_p, 0.0});
    out.push_back({"expansion", "phase_p", e.dphi_p, 0.0});
    if (with_oracle) {
        Su11Point o = su11_oracle(c);
        check_leakage(o.leakage, c.leakage_tol, "su11 oracle");
        out.push_back({"oracle", "delta_N_p", o.dN_p, o.leakage});
        out.push_back({"oracle", "phase_p", o.dphi_p, o.leakage});
    }
    return out;
}

PhaseMap pump_phase_map(const std::vector<double>& g_grid, const std::vector<double>& delta_phi_grid, cplx alpha_p) {
    PhaseMap m{g_grid, delta_phi_grid, {}};
    for (double g : g_grid) {
        std::vector<Su11Point> row;
        for (double ph : delta_phi_grid) {
            Su11Config c;
            c.g = g;
            c.delta_phi = ph;
            c.alpha_p = alpha_p;
            row.push_back(su11_expansion(c));
        }
        m.points.push_back(std::move(row));
    }
    return m;
}

double sfg_optimal_phase() { return std::numbers::pi / 2; }

namespace {

struct SfgSetup {
    FockSpace s;
    Propagator u;
    StateVector pump_only;
    SpMat np, nsi;
};

SfgSetup sfg_setup(double g_max, const SfgConfig& c) {
    const double tol = c.leakage_tol * 1e-2;
    const double mean = std::pow(std::sinh(g_max), 2);
    PdcDims d = pick_dims(std::norm(c.alpha_p), mean, c.pump_dim, c.signal_dim, tol);
    FockSpace s = make_space({{Role::pump, d.pump}, {Role::signal, d.weak}, {Role::idler, d.weak}});
    Propagator u(make_hamiltonian(s, 1.0));
    StateVector p = coherent_state(s, 0, c.alpha_p, 1.0);
    SpMat np = number_op(s, 0).mat;
    SpMat nsi = SpMat(number_op(s, 1).mat + number_op(s, 2).mat);
    return {std::move(s), std::move(u), std::move(p), std::move(np), std::move(nsi)};
}

SfgPoint sfg_point_on(const SfgSetup& st, double g, SfgInput kind, const SfgConfig& c, double seed_phase) {
    if (!(g > 0.0)) throw std::invalid_argument("sfg efficiency needs g > 0");
    const double amp = std::abs(c.alpha_p);
    const double t = g / amp;
    SfgPoint r;
    r.g = g;

    Vec base = st.u.evolve(st.pump_only.amps, t);
    r.dN_p_vac = expect_real(base, st.np) - expect_real(st.pump_only.amps, st.np);
    double leak = std::max(st.pump_only.leakage, guard_leakage(st.s, base));

    Vec in;
    if (kind == SfgInput::entangled_su11) {
        in = st.u.evolve(st.pump_only.amps, t);
        apply_mode_phase(st.s, in, 1, std::numbers::pi);
    } else {
        r.phase = seed_phase;
        const double beta = std::sinh(g);
        auto pa = coherent_amplitudes(st.s.dim(0), c.alpha_p);
        auto sa = coherent_amplitudes(st.s.dim(1), std::polar(beta, seed_phase + std::arg(c.alpha_p)));
        auto ia = coherent_amplitudes(st.s.dim(2), cplx(beta, 0.0));
        leak = std::max({leak, pa.tail, sa.tail, ia.tail});
        in = product_state(st.s, {pa.amps, sa.amps, ia.amps}).amps;
    }
    leak = std::max(leak, guard_leakage(st.s, in));
    r.n_in = expect_real(in, st.nsi);
    Vec out = st.u.evolve(in, t);
    leak = std::max(leak, guard_leakage(st.s, out));
    r.dN_p = expect_real(out, st.np) - expect_real(in, st.np);
    r.eta = (r.dN_p - r.dN_p_vac) / r.n_in;
    r.leakage = leak;
    return r;
}

}  // namespace

SfgPoint sfg_efficiency_point(double g, SfgInput kind, const SfgConfig& c, double seed_phase) {
    SfgSetup st = sfg_setup(g, c);
    return sfg_point_on(st, g, kind, c, seed_phase);
}

std::vector<SfgPoint> sfg_efficiency_curve(const std::vector<double>& g_grid, SfgInput kind, const SfgConfig& c) {
    if (g_grid.empty()) return {};
    SfgSetup st = sfg_setup(*std::max_element(g_grid.begin(), g_grid.end()), c);
    std::vector<SfgPoint> out;
    for (double g : g_grid) {
        out.push_back(sfg_point_on(st, g, kind, c, sfg_optimal_phase()));
        check_leakage(out.back().leakage, c.leakage_tol, "sfg oracle");
    }
    return out;
}

PdcConvergence pdc_convergence(double alpha2, double g, int pump_dim, int weak_dim) {
    if (!(alpha2 > 0.0) || !(g >= 0.0)) throw std::invalid_argument("pdc_convergence: bad arguments");
    PdcDims d = pick_dims(alpha2, std::pow(std::sinh(g), 2), pump_dim, weak_dim, 1e-10);
    FockSpace s = make_space({{Role::pump, d.pump}, {Role::signal, d.weak}, {Role::idler, d.weak}});
    const double amp = std::sqrt(alpha2);
    const double t = g / amp;
    StateVector in = coherent_state(s, 0, cplx(amp, 0.0), 1.0);

    Propagator u(make_hamiltonian(s, 1.0));
    Vec psi = u.evolve(in.amps, t);
    SpMat ns = number_op(s, 1).mat;

    PdcConvergence r;
    r.alpha2 = alpha2;
    r.g = g;
    r.oracle = expect_real(psi, ns);
    r.leakage = std::max(in.leakage, guard_leakage(s, psi));

    ExpansionResult e = pdc_expansion(s, cplx(t, 0.0));
    r.expansion_o1 = (e.order(1, 1) * in.amps).squaredNorm();
    r.expansion = (e.total_up_to(1, 3) * in.amps).squaredNorm();
    r.rel_gap = std::abs(r.expansion - r.oracle) / std::abs(r.oracle);
    return r;
}

}  // namespace wfx
