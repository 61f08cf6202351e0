#include "wfx/number_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace wfx {

namespace {

constexpr int kTerms = 24;

enum Base { H0, H1, H2, H3, H4, H5, H6, H7, H8 };

double fact(int n) { return std::tgamma(n + 1.0); }

// coefficients of u^k for the hyperbolic families
const std::array<std::array<double, kTerms>, 9>& tables() {
    static const auto t = [] {
        std::array<std::array<double, kTerms>, 9> c{};
        for (int k = 0; k < kTerms; ++k) {
            c[H0][k] = 1.0 / fact(2 * k);
            c[H1][k] = 1.0 / fact(2 * k + 1);
            c[H2][k] = 2.0 * std::pow(4.0, k) / fact(2 * k + 1);
            c[H3][k] = std::pow(4.0, k + 1) / (2.0 * fact(2 * k + 2));
            c[H4][k] = std::pow(2.0, 2 * k + 3) / fact(2 * k + 3);
            c[H5][k] = (std::pow(9.0, k + 1) - 1.0) / (4.0 * fact(2 * k + 2)) + 1.0 / fact(2 * k + 1);
            c[H6][k] = (std::pow(9.0, k + 2) - 1.0) / (4.0 * fact(2 * k + 4)) - 1.0 / fact(2 * k + 3);
            c[H7][k] = (std::pow(3.0, 2 * k + 3) - 3.0) / (4.0 * fact(2 * k + 3)) + 1.0 / fact(2 * k + 2) - 1.0 / fact(2 * k + 3);
            c[H8][k] = (std::pow(3.0, 2 * k + 3) - 3.0) / (4.0 * fact(2 * k + 3)) - 1.0 / fact(2 * k + 2) + 1.0 / fact(2 * k + 3);
        }
        return c;
    }();
    return t;
}

struct Map {
    Base base;
    int xpow;
    double sign;  // overall sign
    bool trig;    // u -> -u
};

Map mapping(NumberFn f) {
    switch (f) {
        case NumberFn::cosh_g: return {H0, 0, 1, false};
        case NumberFn::sinh_g_over_sqrtN: return {H1, 1, 1, false};
        case NumberFn::sinh2g_over_sqrtN: return {H2, 1, 1, false};
        case NumberFn::sinh_sq_over_N: return {H3, 2, 1, false};
        case NumberFn::sinh2g_minus_2g_over_N32: return {H4, 3, 1, false};
        case NumberFn::C_plus_over_N: return {H5, 2, 1, false};
        case NumberFn::C_minus_over_Nsq: return {H6, 4, 1, false};
        case NumberFn::S_plus_over_N32: return {H7, 3, 1, false};
        case NumberFn::S_minus_over_N32: return {H8, 3, 1, false};
        case NumberFn::cos_g: return {H0, 0, 1, true};
        case NumberFn::sin_g_over_sqrtN: return {H1, 1, 1, true};
        case NumberFn::sin2g_over_sqrtN: return {H2, 1, 1, true};
        case NumberFn::sin_sq_over_N: return {H3, 2, 1, true};
        case NumberFn::sin2g_minus_2g_over_N32: return {H4, 3, -1, true};
        case NumberFn::c_plus_over_Nsq: return {H6, 4, 1, true};
        case NumberFn::c_minus_over_N: return {H5, 2, -1, true};
        case NumberFn::s_plus_over_N32: return {H8, 3, 1, true};
        case NumberFn::s_minus_over_N32: return {H7, 3, 1, true};
    }
    throw std::invalid_argument("bad NumberFn");
}

}  // namespace

std::string fn_name(NumberFn f) {
    switch (f) {
        case NumberFn::cosh_g: return "cosh_g";
        case NumberFn::sinh_g_over_sqrtN: return "sinh_g_over_sqrtN";
        case NumberFn::sinh2g_over_sqrtN: return "sinh2g_over_sqrtN";
        case NumberFn::sinh_sq_over_N: return "sinh_sq_over_N";
        case NumberFn::sinh2g_minus_2g_over_N32: return "sinh2g_minus_2g_over_N32";
        case NumberFn::C_plus_over_N: return "C_plus_over_N";
        case NumberFn::C_minus_over_Nsq: return "C_minus_over_Nsq";
        case NumberFn::S_plus_over_N32: return "S_plus_over_N32";
        case NumberFn::S_minus_over_N32: return "S_minus_over_N32";
        case NumberFn::cos_g: return "cos_g";
        case NumberFn::sin_g_over_sqrtN: return "sin_g_over_sqrtN";
        case NumberFn::sin2g_over_sqrtN: return "sin2g_over_sqrtN";
        case NumberFn::sin_sq_over_N: return "sin_sq_over_N";
        case NumberFn::sin2g_minus_2g_over_N32: return "sin2g_minus_2g_over_N32";
        case NumberFn::c_plus_over_Nsq: return "c_plus_over_Nsq";
        case NumberFn::c_minus_over_N: return "c_minus_over_N";
        case NumberFn::s_plus_over_N32: return "s_plus_over_N32";
        case NumberFn::s_minus_over_N32: return "s_minus_over_N32";
    }
    return "?";
}

int fn_x_power(NumberFn f) { return mapping(f).xpow; }

cplx eval_series(NumberFn f, double n, cplx x, int terms) {
    if (terms < 1 || terms > kTerms) throw std::invalid_argument("series terms out of range");
    const Map mp = mapping(f);
    const auto& c = tables()[mp.base];
    cplx u = std::max(n, 0.0) * x * x;
    if (mp.trig) u = -u;
    cplx acc = 0.0;
    for (int k = terms - 1; k >= 0; --k) acc = acc * u + c[k];
    return mp.sign * acc * std::pow(x, mp.xpow);
}

cplx eval_closed(NumberFn f, double n, cplx x) {
    if (!(n > 0.0)) throw std::invalid_argument("closed form needs n > 0");
    const double rn = std::sqrt(n);
    const cplx g = rn * x;
    const double n32 = n * rn;
    switch (f) {
        case NumberFn::cosh_g: return std::cosh(g);
        case NumberFn::sinh_g_over_sqrtN: return std::sinh(g) / rn;
        case NumberFn::sinh2g_over_sqrtN: return std::sinh(2.0 * g) / rn;
        case NumberFn::sinh_sq_over_N: { cplx s = std::sinh(g); return s * s / n; }
        case NumberFn::sinh2g_minus_2g_over_N32: return (std::sinh(2.0 * g) - 2.0 * g) / n32;
        case NumberFn::C_plus_over_N: { cplx ch = std::cosh(g); return (ch * ch * ch - ch + g * std::sinh(g)) / n; }
        case NumberFn::C_minus_over_Nsq: { cplx ch = std::cosh(g); return (ch * ch * ch - ch - g * std::sinh(g)) / (n * n); }
        case NumberFn::S_plus_over_N32: { cplx sh = std::sinh(g); return (sh * sh * sh + (g * std::cosh(g) - sh)) / n32; }
        case NumberFn::S_minus_over_N32: { cplx sh = std::sinh(g); return (sh * sh * sh - (g * std::cosh(g) - sh)) / n32; }
        case NumberFn::cos_g: return std::cos(g);
        case NumberFn::sin_g_over_sqrtN: return std::sin(g) / rn;
        case NumberFn::sin2g_over_sqrtN: return std::sin(2.0 * g) / rn;
        case NumberFn::sin_sq_over_N: { cplx s = std::sin(g); return s * s / n; }
        case NumberFn::sin2g_minus_2g_over_N32: return (std::sin(2.0 * g) - 2.0 * g) / n32;
        case NumberFn::c_plus_over_Nsq: { cplx co = std::cos(g); return (co * co * co - co + g * std::sin(g)) / (n * n); }
        case NumberFn::c_minus_over_N: { cplx co = std::cos(g); return (co * co * co - co - g * std::sin(g)) / n; }
        case NumberFn::s_plus_over_N32: { cplx si = std::sin(g); return (si * si * si + (g * std::cos(g) - si)) / n32; }
        case NumberFn::s_minus_over_N32: { cplx si = std::sin(g); return (si * si * si - (g * std::cos(g) - si)) / n32; }
    }
    throw std::invalid_argument("bad NumberFn");
}

cplx eval(NumberFn f, double n, cplx x) {
    if (!std::isfinite(n) || !std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::invalid_argument("non-finite argument to " + fn_name(f));
    n = std::max(n, 0.0);
    cplx v = (std::abs(n * x * x) < series_threshold) ? eval_series(f, n, x, kTerms) : eval_closed(f, n, x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::domain_error("non-finite value of " + fn_name(f));
    return v;
}

double eval(NumberFn f, int n, double chi_t) {
    if (n < 0) throw std::invalid_argument("negative occupation");
    return eval(f, double(n), cplx(chi_t)).real();
}

SpMat number_function_matrix(const FockSpace& s, int mode, NumberFn f, cplx chi_t) {
    if (mode < 0 || mode >= s.num_modes()) throw std::invalid_argument("unknown mode index");
    std::vector<cplx> v(s.dim(mode));
    for (int k = 0; k < s.dim(mode); ++k) v[k] = eval(f, double(k), chi_t);
    return diagonal_of(s, mode, [&](int k) { return v[k]; });
}

OperatorMatrix number_function_op(const FockSpace& s, int mode, NumberFn f, double chi_t) {
    return {number_function_matrix(s, mode, f, cplx(chi_t)), true};
}

}  // namespace wfx
