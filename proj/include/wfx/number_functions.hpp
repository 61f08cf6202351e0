#pragma once

#include <array>
#include <string>

#include "wfx/fock.hpp"

namespace wfx {

// f(n; x) with g = sqrt(n) x. Strong-pump family is hyperbolic, strong-idler family trigonometric.
enum class NumberFn {
    cosh_g,
    sinh_g_over_sqrtN,
    sinh2g_over_sqrtN,
    sinh_sq_over_N,
    sinh2g_minus_2g_over_N32,
    C_plus_over_N,
    C_minus_over_Nsq,
    S_plus_over_N32,
    S_minus_over_N32,
    cos_g,
    sin_g_over_sqrtN,
    sin2g_over_sqrtN,
    sin_sq_over_N,
    sin2g_minus_2g_over_N32,
    c_plus_over_Nsq,
    c_minus_over_N,
    s_plus_over_N32,
    s_minus_over_N32,
};

inline constexpr std::array<NumberFn, 18> all_number_fns = {
    NumberFn::cosh_g,           NumberFn::sinh_g_over_sqrtN,  NumberFn::sinh2g_over_sqrtN,
    NumberFn::sinh_sq_over_N,   NumberFn::sinh2g_minus_2g_over_N32, NumberFn::C_plus_over_N,
    NumberFn::C_minus_over_Nsq, NumberFn::S_plus_over_N32,    NumberFn::S_minus_over_N32,
    NumberFn::cos_g,            NumberFn::sin_g_over_sqrtN,   NumberFn::sin2g_over_sqrtN,
    NumberFn::sin_sq_over_N,    NumberFn::sin2g_minus_2g_over_N32, NumberFn::c_plus_over_Nsq,
    NumberFn::c_minus_over_N,   NumberFn::s_plus_over_N32,    NumberFn::s_minus_over_N32,
};

std::string fn_name(NumberFn f);

// power of x carried in front of the series in u = n x^2
int fn_x_power(NumberFn f);

// |n x^2| below this uses the power series
inline constexpr double series_threshold = 0.5;

// n is a real occupation (eigenvalue); negative round-off is clamped to 0
cplx eval(NumberFn f, double n, cplx chi_t);
double eval(NumberFn f, int n, double chi_t);

// truncated power series with `terms` terms, for cross-checks
cplx eval_series(NumberFn f, double n, cplx chi_t, int terms);
// straight closed form; n must be > 0
cplx eval_closed(NumberFn f, double n, cplx chi_t);

SpMat number_function_matrix(const FockSpace& s, int mode, NumberFn f, cplx chi_t);
OperatorMatrix number_function_op(const FockSpace& s, int mode, NumberFn f, double chi_t);

}  // namespace wfx
