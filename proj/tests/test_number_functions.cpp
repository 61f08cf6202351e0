#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "wfx/number_functions.hpp"

using namespace wfx;

namespace {

// power series in g, long double coefficients
using Poly = std::vector<long double>;
constexpr int deg = 70;

Poly series(bool hyperbolic, bool even) {
    Poly p(deg + 1, 0.0L);
    long double f = 1.0L;
    for (int j = 0; j <= deg; ++j) {
        if (j > 0) f *= j;
        if ((j % 2 == 0) != even) continue;
        int k = j / 2;
        p[j] = ((hyperbolic || k % 2 == 0) ? 1.0L : -1.0L) / f;
    }
    return p;
}
Poly mul(const Poly& a, const Poly& b) {
    Poly c(deg + 1, 0.0L);
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) c[i + j] += a[i] * b[j];
    return c;
}
Poly add(Poly a, const Poly& b, long double s = 1.0L) {
    for (int i = 0; i <= deg; ++i) a[i] += s * b[i];
    return a;
}
Poly shift(const Poly& a, int k, long double s = 1.0L) {  // s g^k a
    Poly c(deg + 1, 0.0L);
    for (int i = 0; i + k <= deg; ++i) c[i + k] = s * a[i];
    return c;
}

struct Ref {
    Poly p;
    int n_half_powers;  // value = p(g) / N^(n_half_powers/2)
};

Ref reference(NumberFn f) {
    const bool hyp = static_cast<int>(f) < static_cast<int>(NumberFn::cos_g);
    Poly c = series(hyp, true), s = series(hyp, false);
    Poly s2g(deg + 1, 0.0L);  // sinh 2g / sin 2g
    for (int j = 0; j <= deg; ++j) s2g[j] = s[j] * std::pow(2.0L, j);
    Poly s2g_minus = s2g;
    s2g_minus[1] -= 2.0L;
    Poly c3 = mul(mul(c, c), c), s3 = mul(mul(s, s), s);
    switch (f) {
        case NumberFn::cosh_g: case NumberFn::cos_g: return {c, 0};
        case NumberFn::sinh_g_over_sqrtN: case NumberFn::sin_g_over_sqrtN: return {s, 1};
        case NumberFn::sinh2g_over_sqrtN: case NumberFn::sin2g_over_sqrtN: return {s2g, 1};
        case NumberFn::sinh_sq_over_N: case NumberFn::sin_sq_over_N: return {mul(s, s), 2};
        case NumberFn::sinh2g_minus_2g_over_N32: case NumberFn::sin2g_minus_2g_over_N32:
            return {s2g_minus, 3};
        case NumberFn::C_plus_over_N: return {add(add(c3, c, -1), shift(s, 1)), 2};
        case NumberFn::C_minus_over_Nsq: return {add(add(c3, c, -1), shift(s, 1), -1), 4};
        case NumberFn::S_plus_over_N32: return {add(s3, add(shift(c, 1), s, -1)), 3};
        case NumberFn::S_minus_over_N32: return {add(s3, add(shift(c, 1), s, -1), -1), 3};
        case NumberFn::c_plus_over_Nsq: return {add(add(c3, c, -1), shift(s, 1)), 4};
        case NumberFn::c_minus_over_N: return {add(add(c3, c, -1), shift(s, 1), -1), 2};
        case NumberFn::s_plus_over_N32: return {add(s3, add(shift(c, 1), s, -1)), 3};
        case NumberFn::s_minus_over_N32: return {add(s3, add(shift(c, 1), s, -1), -1), 3};
    }
    return {};
}

long double ref_value(NumberFn f, double n, double x) {
    Ref r = reference(f);
    // p(g)/N^(h/2) = sum_j p_j x^j N^((j-h)/2), dropping round-off below the leading power
    long double v = 0.0L;
    for (int j = 0; j <= deg; ++j) {
        if (j < r.n_half_powers) {
            EXPECT_LT(std::fabs(static_cast<double>(r.p[j])), 1e-15) << fn_name(f) << " j=" << j;
            continue;
        }
        v += r.p[j] * std::pow(static_cast<long double>(x), j) * std::pow(static_cast<long double>(n), (j - r.n_half_powers) / 2.0L);
    }
    return v;
}

}  // namespace

TEST(NumberFunctions, MatchIndependentSeriesOnBothBranches) {
    for (NumberFn f : all_number_fns)
        for (double n : {0.0, 0.5, 1.0, 4.0, 25.0})
            for (double x : {0.01, 0.1, 0.2, 0.3}) {
                const double v = std::real(eval(f, n, cplx(x, 0.0)));
                const double r = static_cast<double>(ref_value(f, n, x));
                EXPECT_NEAR(v, r, 1e-11 * std::max(1.0, std::abs(r))) << fn_name(f) << " n=" << n << " x=" << x;
            }
}

TEST(NumberFunctions, BranchesAgreeAtThreshold) {
    for (NumberFn f : all_number_fns) {
        const double n = 2.0, x = std::sqrt(series_threshold / n);
        cplx a = eval_series(f, n, cplx(x, 0.0), 24), b = eval_closed(f, n, cplx(x, 0.0));
        EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b))) << fn_name(f);
    }
}

TEST(NumberFunctions, ComplexArgumentsAnalytic) {
    // f(n; conj x) = conj f(n; x) for real-coefficient series
    for (NumberFn f : all_number_fns) {
        cplx x(0.05, 0.04);
        EXPECT_LE(std::abs(eval(f, 3.0, std::conj(x)) - std::conj(eval(f, 3.0, x))), 1e-14) << fn_name(f);
    }
}

TEST(NumberFunctions, KnownTaylorCoefficients) {
    // c_-(g) = -2 g^2 + g^4 + ..., s_-(g) = 4 g^3 / 3 + ...
    const double x = 1e-3;
    EXPECT_NEAR(std::real(eval(NumberFn::c_minus_over_N, 1.0, cplx(x, 0.0))), -2 * x * x + std::pow(x, 4), 1e-16);
    EXPECT_NEAR(std::real(eval(NumberFn::s_minus_over_N32, 1.0, cplx(x, 0.0))) / std::pow(x, 3), 4.0 / 3.0, 1e-5);
}

TEST(NumberFunctions, RejectsNonFinite) {
    EXPECT_THROW(eval(NumberFn::cosh_g, std::nan(""), cplx(0.1, 0.0)), std::invalid_argument);
    EXPECT_THROW(eval_closed(NumberFn::cosh_g, 0.0, cplx(0.1, 0.0)), std::invalid_argument);
    EXPECT_THROW(eval(NumberFn::sinh_sq_over_N, 1.0, cplx(1000.0, 0.0)), std::domain_error);
}

TEST(NumberFunctions, DiagonalMatrix) {
    FockSpace s = make_space({{Role::pump, 5}, {Role::signal, 2}});
    SpMat m = number_function_matrix(s, 0, NumberFn::cosh_g, cplx(0.3, 0.0));
    for (std::size_t i = 0; i < s.total_dim(); ++i) {
        const int n = s.occupation(i, 0);
        EXPECT_NEAR(std::real(m.coeff(i, i)), std::cosh(std::sqrt(double(n)) * 0.3), 1e-14);
    }
    EXPECT_TRUE(number_function_op(s, 0, NumberFn::cos_g, 0.3).hermitian);
}
