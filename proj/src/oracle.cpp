#include "wfx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfx {

std::vector<PairModes> space_pairs(const FockSpace& s) {
    std::vector<PairModes> out;
    int si = s.find(Role::signal), ii = s.find(Role::idler);
    if (si >= 0 && ii >= 0) out.push_back({si, ii});
    for (int k = 0; k < s.num_modes(); ++k) {
        if (s.mode(k).role != Role::signal_k) continue;
        int id = s.find(Role::idler_k, s.mode(k).pair);
        if (id < 0) throw std::invalid_argument("signal_k without matching idler_k");
        out.push_back({k, id});
    }
    if (out.empty()) throw std::invalid_argument("space has no signal/idler pair");
    return out;
}

SpMat trilinear(const FockSpace& s, int pump, const std::vector<PairModes>& pairs) {
    SpMat ap = annihilation(s, pump).mat;
    SpMat h(s.total_dim(), s.total_dim());
    for (const auto& pr : pairs) {
        SpMat as = annihilation(s, pr.signal).mat;
        SpMat ai = annihilation(s, pr.idler).mat;
        SpMat down = ap * dagger(as) * dagger(ai);
        h += down + dagger(down);
    }
    h.prune(cplx(0.0));
    return h;
}

Hamiltonian make_hamiltonian(const FockSpace& s, double chi, std::vector<PairModes> pairs) {
    if (!std::isfinite(chi)) throw std::invalid_argument("chi must be finite");
    Hamiltonian h;
    h.space = &s;
    h.chi = chi;
    h.pump = s.require(Role::pump);
    h.pairs = pairs.empty() ? space_pairs(s) : std::move(pairs);
    h.matrix = {SpMat(chi * trilinear(s, h.pump, h.pairs)), true};
    return h;
}

Propagator::Propagator(const Hamiltonian& h) : h_chi_(h.chi) {
    // decompose H/chi so chi = 0 still has a valid (trivial) spectrum
    SpMat base = trilinear(*h.space, h.pump, h.pairs);
    blocks_ = std::make_shared<const HermitianBlocks>(base, 1e-12);
}

OperatorMatrix propagator(const Hamiltonian& h, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
    return {Propagator(h).unitary(t), false};
}

cplx heisenberg_expect(const Vec& psi, const SpMat& observable, const Hamiltonian& h, double t) {
    if (psi.size() != observable.rows() || psi.size() != h.matrix.mat.rows())
        throw std::invalid_argument("dimension mismatch");
    Vec phi = Propagator(h).evolve(psi, t);
    return expect(phi, observable);
}

namespace {

ClassicalAmplitudes rhs(const ClassicalAmplitudes& a, double chi) {
    const cplx mi(0.0, -chi);
    return {mi * a.a_s * a.a_i, mi * std::conj(a.a_i) * a.a_p, mi * std::conj(a.a_s) * a.a_p};
}

ClassicalAmplitudes axpy(const ClassicalAmplitudes& a, double h, const ClassicalAmplitudes& k) {
    return {a.a_p + h * k.a_p, a.a_s + h * k.a_s, a.a_i + h * k.a_i};
}

double mr_drift(const ClassicalAmplitudes& a0, const ClassicalAmplitudes& a) {
    double d1 = std::abs((std::norm(a.a_p) + std::norm(a.a_s)) - (std::norm(a0.a_p) + std::norm(a0.a_s)));
    double d2 = std::abs((std::norm(a.a_s) - std::norm(a.a_i)) - (std::norm(a0.a_s) - std::norm(a0.a_i)));
    return std::max(d1, d2);
}

}  // namespace

ClassicalRun classical_twm_run(const ClassicalAmplitudes& a0, double chi, double t, Direction dir) {
    for (cplx v : {a0.a_p, a0.a_s, a0.a_i})
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite amplitude");
    ClassicalRun run;
    run.amps = a0;
    if (t == 0.0 || chi == 0.0) return run;
    const double T = (dir == Direction::backward) ? -t : t;
    const double amax = std::max({std::abs(a0.a_p), std::abs(a0.a_s), std::abs(a0.a_i)});
    double h = std::abs(T) / 100.0;
    if (amax > 0.0) h = std::min(0.01 / (std::abs(chi) * amax), h);
    const double floor = 1e-12 * std::abs(T);

    for (;;) {
        int steps = static_cast<int>(std::ceil(std::abs(T) / h - 1e-9));
        double hs = T / steps;
        ClassicalAmplitudes a = a0;
        for (int s = 0; s < steps; ++s) {
            auto k1 = rhs(a, chi);
            auto k2 = rhs(axpy(a, hs / 2, k1), chi);
            auto k3 = rhs(axpy(a, hs / 2, k2), chi);
            auto k4 = rhs(axpy(a, hs, k3), chi);
            a.a_p += hs / 6 * (k1.a_p + 2.0 * k2.a_p + 2.0 * k3.a_p + k4.a_p);
            a.a_s += hs / 6 * (k1.a_s + 2.0 * k2.a_s + 2.0 * k3.a_s + k4.a_s);
            a.a_i += hs / 6 * (k1.a_i + 2.0 * k2.a_i + 2.0 * k3.a_i + k4.a_i);
        }
        double drift = mr_drift(a0, a);
        if (drift <= 1e-9) {
            run.amps = a;
            run.steps = steps;
            run.manley_rowe_drift = drift;
            return run;
        }
        h /= 2;
        if (h < floor) throw std::runtime_error("classical_twm_evolve: step size underflow");
    }
}

ClassicalAmplitudes classical_twm_evolve(const ClassicalAmplitudes& a0, double chi, double t, Direction dir) {
    return classical_twm_run(a0, chi, t, dir).amps;
}

}  // namespace wfx
