#include "wfx/expansion.hpp"

#include <memory>
#include <stdexcept>

#include "wfx/hermitian_blocks.hpp"

namespace wfx {

namespace {

const cplx I1(0.0, 1.0);

SpMat zero_like(const SpMat& m) { return SpMat(m.rows(), m.cols()); }

std::function<SpMat(NumberFn)> fn_of_hermitian(const SpMat& n_mat, cplx chi_t) {
    auto blocks = std::make_shared<HermitianBlocks>(n_mat, 1e-9);
    return [blocks, chi_t](NumberFn f) { return blocks->apply([f, chi_t](double x) { return eval(f, x, chi_t); }); };
}

std::function<SpMat(NumberFn)> fn_scalar(double n, cplx chi_t, SpMat id) {
    return [n, chi_t, id](NumberFn f) { return SpMat(eval(f, n, chi_t) * id); };
}

}  // namespace

Scenario make_scenario(ScenarioKind kind, Role strong) {
    if (kind == ScenarioKind::ParametricAmplification && strong != Role::pump)
        throw std::invalid_argument("parametric amplification needs a strong pump");
    if (kind == ScenarioKind::StateTransfer && strong != Role::idler)
        throw std::invalid_argument("state transfer needs a strong idler");
    return {kind, strong};
}

PdcInputs pdc_inputs(const FockSpace& s, cplx chi_t, std::vector<PairModes> pairs) {
    if (pairs.empty()) pairs = space_pairs(s);
    const int p = s.require(Role::pump);
    PdcInputs in;
    in.ap = annihilation(s, p).mat;
    for (const auto& pr : pairs) {
        in.as.push_back(annihilation(s, pr.signal).mat);
        in.ai.push_back(annihilation(s, pr.idler).mat);
    }
    in.id = identity(s);
    in.fn = [&s, p, chi_t](NumberFn f) { return number_function_matrix(s, p, f, chi_t); };
    return in;
}

StInputs st_inputs(const FockSpace& s, cplx chi_t) {
    const int p = s.require(Role::pump), sg = s.require(Role::signal), id = s.require(Role::idler);
    StInputs in;
    in.ap = annihilation(s, p).mat;
    in.as = annihilation(s, sg).mat;
    in.ai = annihilation(s, id).mat;
    in.id = identity(s);
    in.fn = [&s, id, chi_t](NumberFn f) { return number_function_matrix(s, id, f, chi_t); };
    return in;
}

PdcInputs pdc_inputs_classical(const FockSpace& weak, cplx alpha_p, cplx chi_t) {
    if (weak.find(Role::pump) >= 0) throw std::invalid_argument("classical pump: weak space must not contain the pump");
    PdcInputs in;
    in.id = identity(weak);
    in.ap = alpha_p * in.id;
    for (const auto& pr : space_pairs(weak)) {
        in.as.push_back(annihilation(weak, pr.signal).mat);
        in.ai.push_back(annihilation(weak, pr.idler).mat);
    }
    in.fn = fn_scalar(std::norm(alpha_p), chi_t, in.id);
    return in;
}

StInputs st_inputs_classical(const FockSpace& weak, cplx alpha_i, cplx chi_t) {
    if (weak.find(Role::idler) >= 0) throw std::invalid_argument("classical idler: weak space must not contain the idler");
    StInputs in;
    in.id = identity(weak);
    in.ap = annihilation(weak, weak.require(Role::pump)).mat;
    in.as = annihilation(weak, weak.require(Role::signal)).mat;
    in.ai = alpha_i * in.id;
    in.fn = fn_scalar(std::norm(alpha_i), chi_t, in.id);
    return in;
}

CompositeOperators make_composites(const FockSpace& s, std::vector<PairModes> pairs) {
    if (pairs.empty()) pairs = space_pairs(s);
    const int p = s.require(Role::pump);
    SpMat ap = annihilation(s, p).mat, id = identity(s);
    CompositeOperators c;
    c.A_hat = SpMat(s.total_dim(), s.total_dim());
    c.N_dc = SpMat(s.total_dim(), s.total_dim());
    for (const auto& pr : pairs) {
        SpMat as = annihilation(s, pr.signal).mat, ai = annihilation(s, pr.idler).mat;
        c.A_hat += as * ai;
        c.N_dc += dagger(as) * as + dagger(ai) * ai + id;
    }
    c.H_prime = c.A_hat * dagger(ap) + dagger(c.A_hat) * ap;
    SpMat as0 = annihilation(s, pairs[0].signal).mat;
    c.B_hat = as0 * dagger(ap);
    c.Delta_N = dagger(as0) * as0 - dagger(ap) * ap;
    return c;
}

SpMat gain_operator(const FockSpace& s, int strong_mode, double chi_t) {
    if (!std::isfinite(chi_t)) throw std::invalid_argument("chi_t must be finite");
    return diagonal_of(s, strong_mode, [chi_t](int n) { return cplx(std::sqrt(double(n)) * chi_t); });
}

PdcOrder1 pdc_order1_weak(const PdcInputs& in, int k) {
    const SpMat ch = in.fn(NumberFn::cosh_g), sh = in.fn(NumberFn::sinh_g_over_sqrtN);
    const SpMat& as = in.as.at(k);
    const SpMat& ai = in.ai.at(k);
    PdcOrder1 o;
    o.signal = as * ch - I1 * (dagger(ai) * in.ap * sh);
    o.idler = ai * ch - I1 * (dagger(as) * in.ap * sh);
    return o;
}

PdcPumpOrder2 pdc_order2_pump(const PdcInputs& in, KerrForm form) {
    const SpMat& ap = in.ap;
    SpMat A = zero_like(ap), Ndc = zero_like(ap);
    for (std::size_t k = 0; k < in.as.size(); ++k) {
        A += in.as[k] * in.ai[k];
        Ndc += dagger(in.as[k]) * in.as[k] + dagger(in.ai[k]) * in.ai[k] + in.id;
    }
    const SpMat apd = dagger(ap);
    PdcPumpOrder2 o;
    o.sfg = (-0.5 * I1) * (A * in.fn(NumberFn::sinh2g_over_sqrtN));
    o.depletion = -0.5 * (ap * Ndc * in.fn(NumberFn::sinh_sq_over_N));
    SpMat num;
    if (form == KerrForm::single_pair) {
        SpMat Hp = A * apd + dagger(A) * ap;
        num = ap * Hp;
    } else {
        num = A * (apd * ap) + dagger(A) * ap * ap;
    }
    o.kerr = (0.25 * I1) * (num * in.fn(NumberFn::sinh2g_minus_2g_over_N32));
    return o;
}

PdcOrder3 pdc_order3_weak(const PdcInputs& in, int k) {
    const SpMat& ap = in.ap;
    SpMat A = zero_like(ap), Ndc = zero_like(ap);
    for (std::size_t j = 0; j < in.as.size(); ++j) {
        A += in.as[j] * in.ai[j];
        Ndc += dagger(in.as[j]) * in.as[j] + dagger(in.ai[j]) * in.ai[j] + in.id;
    }
    const SpMat apd = dagger(ap), Ad = dagger(A), Np = apd * ap;
    const SpMat Cp = in.fn(NumberFn::C_plus_over_N), Cm = in.fn(NumberFn::C_minus_over_Nsq);
    const SpMat Sp = in.fn(NumberFn::S_plus_over_N32), Sm = in.fn(NumberFn::S_minus_over_N32);

    auto build = [&](const SpMat& x, const SpMat& y) {
        const SpMat yd = dagger(y);
        SpMat r = -0.25 * (yd * A * Cp);
        r += (-0.25 * I1) * (x * apd * A * Sp);
        r += 0.25 * ((yd * ap * ap * Ad - x * Ndc * Np) * Cm);
        r += (0.25 * I1) * ((yd * ap * Ndc + x * ap * Ad) * Sm);
        return r;
    };
    return {build(in.as.at(k), in.ai.at(k)), build(in.ai.at(k), in.as.at(k))};
}

PdcOrder1 pdc_order1_weak(const FockSpace& s, cplx chi_t, int pair) { return pdc_order1_weak(pdc_inputs(s, chi_t), pair); }

PdcPumpOrder2 pdc_order2_pump(const FockSpace& s, cplx chi_t) {
    auto in = pdc_inputs(s, chi_t);
    return pdc_order2_pump(in, in.as.size() == 1 ? KerrForm::single_pair : KerrForm::multi_mode);
}

PdcOrder3 pdc_order3_weak(const FockSpace& s, cplx chi_t, int pair) { return pdc_order3_weak(pdc_inputs(s, chi_t), pair); }

StOrders st_orders(const StInputs& in) {
    const SpMat &ap = in.ap, &as = in.as, &ai = in.ai;
    const SpMat apd = dagger(ap), asd = dagger(as), aid = dagger(ai);
    const SpMat Np = apd * ap, Ns = asd * as, Ni = aid * ai;
    const SpMat B = as * apd, Bd = dagger(B), dN = Ns - Np;
    const SpMat Hp = apd * as * ai + ap * asd * aid;

    const SpMat co = in.fn(NumberFn::cos_g), si = in.fn(NumberFn::sin_g_over_sqrtN);
    StOrders o;
    o.s1 = as * co - I1 * (ap * si * aid);
    o.p1 = ap * co - I1 * (as * ai * si);
    o.i2 = (-0.5 * I1) * (asd * ap * in.fn(NumberFn::sin2g_over_sqrtN));
    o.i2 += 0.5 * (ai * (Np - Ns) * in.fn(NumberFn::sin_sq_over_N));
    o.i2 += (0.25 * I1) * (ai * Hp * in.fn(NumberFn::sin2g_minus_2g_over_N32));

    const SpMat cm = in.fn(NumberFn::c_minus_over_N), cp = in.fn(NumberFn::c_plus_over_Nsq);
    const SpMat sm = in.fn(NumberFn::s_minus_over_N32), sp = in.fn(NumberFn::s_plus_over_N32);

    o.s3 = -0.25 * (B * ap * cm);
    o.s3 += (-0.25 * I1) * (as * ai * B * sm);
    o.s3 += 0.25 * ((ap * aid * aid * Bd + dN * as * Ni) * cp);
    o.s3 += (0.25 * I1) * ((ap * aid * dN + as * aid * Bd) * sp);

    o.p3 = 0.25 * (as * Bd * cm);
    o.p3 += (0.25 * I1) * (ap * aid * Bd * sm);
    o.p3 += -0.25 * ((as * ai * ai * B - ap * dN * Ni) * cp);
    o.p3 += (0.25 * I1) * ((as * ai * dN - ap * ai * B) * sp);
    return o;
}

StOrders st_orders(const FockSpace& s, cplx chi_t) { return st_orders(st_inputs(s, chi_t)); }

SpMat ExpansionResult::total_up_to(int mode, int k) const {
    if (k < 0 || k > 3) throw std::out_of_range("order must be 0..3");
    const auto& o = orders.at(mode);
    SpMat t = o[0];
    for (int j = 1; j <= k; ++j) t += o[j];
    return t;
}

namespace {

ExpansionResult pdc_result(const FockSpace& s, const PdcInputs& in, cplx chi_t) {
    ExpansionResult r{make_scenario(ScenarioKind::ParametricAmplification, Role::pump), chi_t, {}};
    const SpMat z = zero_like(in.ap);
    auto pairs = space_pairs(s);
    auto p2 = pdc_order2_pump(in, pairs.size() == 1 ? KerrForm::single_pair : KerrForm::multi_mode);
    r.orders[s.require(Role::pump)] = {in.ap, z, p2.total(), z};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto o1 = pdc_order1_weak(in, static_cast<int>(k));
        auto o3 = pdc_order3_weak(in, static_cast<int>(k));
        r.orders[pairs[k].signal] = {z, o1.signal, z, o3.signal};
        r.orders[pairs[k].idler] = {z, o1.idler, z, o3.idler};
    }
    return r;
}

ExpansionResult st_result(const FockSpace& s, const StInputs& in, cplx chi_t) {
    ExpansionResult r{make_scenario(ScenarioKind::StateTransfer, Role::idler), chi_t, {}};
    const SpMat z = zero_like(in.ap);
    auto o = st_orders(in);
    r.orders[s.require(Role::idler)] = {in.ai, z, o.i2, z};
    r.orders[s.require(Role::signal)] = {z, o.s1, z, o.s3};
    r.orders[s.require(Role::pump)] = {z, o.p1, z, o.p3};
    return r;
}

cplx phase_of(const std::map<int, double>& ph, int mode) {
    auto it = ph.find(mode);
    return it == ph.end() ? cplx(1.0) : std::polar(1.0, it->second);
}

}  // namespace

ExpansionResult pdc_expansion(const FockSpace& s, cplx chi_t) { return pdc_result(s, pdc_inputs(s, chi_t), chi_t); }
ExpansionResult st_expansion(const FockSpace& s, cplx chi_t) { return st_result(s, st_inputs(s, chi_t), chi_t); }

ExpansionResult compose_stage(const FockSpace& s, const ExpansionResult& stage1, const std::map<int, double>& phase_shifts,
                              cplx chi_t, ComposePolicy policy) {
    const bool full = policy == ComposePolicy::full_substitution;
    auto field = [&](int mode, int order_oc) {
        SpMat m = full ? stage1.total_up_to(mode, 3) : stage1.order(mode, order_oc);
        return SpMat(phase_of(phase_shifts, mode) * m);
    };
    if (stage1.scenario.kind == ScenarioKind::ParametricAmplification) {
        const int p = s.require(Role::pump);
        PdcInputs in;
        in.id = identity(s);
        in.ap = field(p, 0);
        for (const auto& pr : space_pairs(s)) {
            in.as.push_back(field(pr.signal, 1));
            in.ai.push_back(field(pr.idler, 1));
        }
        if (full) {
            SpMat n = dagger(in.ap) * in.ap;
            if (hermiticity_gap(n) > 1e-9) throw std::runtime_error("stage-1 number matrix not Hermitian");
            in.fn = fn_of_hermitian(n, chi_t);
        } else {
            in.fn = [&s, p, chi_t](NumberFn f) { return number_function_matrix(s, p, f, chi_t); };
        }
        return pdc_result(s, in, chi_t);
    }
    const int id = s.require(Role::idler);
    StInputs in;
    in.id = identity(s);
    in.ai = field(id, 0);
    in.as = field(s.require(Role::signal), 1);
    in.ap = field(s.require(Role::pump), 1);
    if (full) {
        SpMat n = dagger(in.ai) * in.ai;
        if (hermiticity_gap(n) > 1e-9) throw std::runtime_error("stage-1 number matrix not Hermitian");
        in.fn = fn_of_hermitian(n, chi_t);
    } else {
        in.fn = [&s, id, chi_t](NumberFn f) { return number_function_matrix(s, id, f, chi_t); };
    }
    return st_result(s, in, chi_t);
}

}  // namespace wfx
