#pragma once

#include <memory>
#include <vector>

#include "wfx/fock.hpp"
#include "wfx/hermitian_blocks.hpp"

namespace wfx {

struct PairModes {
    int signal;
    int idler;
};

// all signal/idler pairs present in the space (signal with idler, signal_k with idler_k)
std::vector<PairModes> space_pairs(const FockSpace& s);

struct Hamiltonian {
    const FockSpace* space = nullptr;
    double chi = 1.0;
    int pump = 0;
    std::vector<PairModes> pairs;
    OperatorMatrix matrix;
};

// H = chi * sum_pairs (a_p a_s^dag a_i^dag + a_p^dag a_s a_i)
Hamiltonian make_hamiltonian(const FockSpace& s, double chi, std::vector<PairModes> pairs = {});
// the same operator without chi: H' of the expansion
SpMat trilinear(const FockSpace& s, int pump, const std::vector<PairModes>& pairs);

class Propagator {
public:
    explicit Propagator(const Hamiltonian& h);
    SpMat unitary(double t) const { return blocks_->unitary(h_chi_ * t); }
    Vec evolve(const Vec& psi, double t) const { return blocks_->evolve(psi, h_chi_ * t); }
    const HermitianBlocks& blocks() const { return *blocks_; }

private:
    double h_chi_;
    std::shared_ptr<const HermitianBlocks> blocks_;  // of H/chi
};

OperatorMatrix propagator(const Hamiltonian& h, double t);
cplx heisenberg_expect(const Vec& psi, const SpMat& observable, const Hamiltonian& h, double t);

struct ClassicalAmplitudes {
    cplx a_p, a_s, a_i;
};

enum class Direction { forward, backward };

struct ClassicalRun {
    ClassicalAmplitudes amps;
    int steps = 0;
    double manley_rowe_drift = 0.0;
};

// RK4 of da_p/dt = -i chi a_s a_i, da_s/dt = -i chi a_i^* a_p, da_i/dt = -i chi a_s^* a_p
ClassicalRun classical_twm_run(const ClassicalAmplitudes& a0, double chi, double t, Direction dir = Direction::forward);
ClassicalAmplitudes classical_twm_evolve(const ClassicalAmplitudes& a0, double chi, double t, Direction dir = Direction::forward);

}  // namespace wfx
