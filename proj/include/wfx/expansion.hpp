#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "wfx/fock.hpp"
#include "wfx/number_functions.hpp"
#include "wfx/oracle.hpp"

namespace wfx {

enum class ScenarioKind { ParametricAmplification, StateTransfer };

struct Scenario {
    ScenarioKind kind;
    Role strong_mode;
};
Scenario make_scenario(ScenarioKind kind, Role strong);

// Operator symbols a closed form is built from. For the bare expansion these are
// the ladder operators of the space; compose_stage swaps in stage-1 outputs, and
// the classical-strong evaluation uses c-number multiples of the identity.
struct PdcInputs {
    SpMat ap;
    std::vector<SpMat> as, ai;
    SpMat id;
    std::function<SpMat(NumberFn)> fn;  // f(N_p) at the stage's chi_t
};

struct StInputs {
    SpMat ap, as, ai, id;
    std::function<SpMat(NumberFn)> fn;  // f(N_i)
};

PdcInputs pdc_inputs(const FockSpace& s, cplx chi_t, std::vector<PairModes> pairs = {});
StInputs st_inputs(const FockSpace& s, cplx chi_t);

// strong field replaced by its coherent amplitude; weak operators act on `weak`
PdcInputs pdc_inputs_classical(const FockSpace& weak, cplx alpha_p, cplx chi_t);
StInputs st_inputs_classical(const FockSpace& weak, cplx alpha_i, cplx chi_t);

struct CompositeOperators {
    SpMat A_hat, N_dc, H_prime;  // parametric amplification
    SpMat B_hat, Delta_N;        // state transfer (first pair)
};
CompositeOperators make_composites(const FockSpace& s, std::vector<PairModes> pairs = {});

SpMat gain_operator(const FockSpace& s, int strong_mode, double chi_t);

struct PdcOrder1 {
    SpMat signal, idler;
};
struct PdcPumpOrder2 {
    SpMat sfg, depletion, kerr;
    SpMat total() const { return sfg + depletion + kerr; }
};
struct PdcOrder3 {
    SpMat signal, idler;
};

// a_p H' (single pair form) or (A N_p + A^dag a_p^2) (multi-mode form)
enum class KerrForm { single_pair, multi_mode };

PdcOrder1 pdc_order1_weak(const PdcInputs& in, int pair = 0);
PdcPumpOrder2 pdc_order2_pump(const PdcInputs& in, KerrForm form);
PdcOrder3 pdc_order3_weak(const PdcInputs& in, int pair = 0);

PdcOrder1 pdc_order1_weak(const FockSpace& s, cplx chi_t, int pair = 0);
// single pair -> single_pair Kerr form, more pairs -> multi_mode
PdcPumpOrder2 pdc_order2_pump(const FockSpace& s, cplx chi_t);
PdcOrder3 pdc_order3_weak(const FockSpace& s, cplx chi_t, int pair = 0);

struct StOrders {
    SpMat s1, p1, i2, s3, p3;
};
StOrders st_orders(const StInputs& in);
StOrders st_orders(const FockSpace& s, cplx chi_t);

struct ExpansionResult {
    Scenario scenario;
    cplx chi_t;
    std::map<int, std::array<SpMat, 4>> orders;  // mode index -> orders 0..3

    const SpMat& order(int mode, int k) const { return orders.at(mode).at(k); }
    SpMat total_up_to(int mode, int k) const;
};

ExpansionResult pdc_expansion(const FockSpace& s, cplx chi_t);
ExpansionResult st_expansion(const FockSpace& s, cplx chi_t);

enum class ComposePolicy {
    full_substitution,  // every input symbol is the complete stage-1 output
    order_consistent,   // strong field enters at order 0, weak fields at order 1
};

// Stage-2 closed forms on stage-1 outputs, with exp(i phi) applied per mode in between.
ExpansionResult compose_stage(const FockSpace& s, const ExpansionResult& stage1, const std::map<int, double>& phase_shifts,
                              cplx chi_t, ComposePolicy policy = ComposePolicy::full_substitution);

}  // namespace wfx
