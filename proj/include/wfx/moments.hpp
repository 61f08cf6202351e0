#pragma once

#include <functional>
#include <string>
#include <ostream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wfx {

using bigint = boost::multiprecision::cpp_int;

class StirlingTable {
public:
    explicit StirlingTable(int m_max = 30);
    int m_max() const { return m_max_; }
    const bigint& operator()(int m, int k) const;
    bigint bell(int m) const;
    void dump_csv(std::ostream& os) const;  // columns l,k,value with l := m

private:
    int m_max_;
    std::vector<std::vector<bigint>> s_;
};

// R(0,0) = 1, R(l,k) = k R(l-1,k) + (k+l-1) R(l-1,k-1)
class RTable {
public:
    explicit RTable(int l_max = 12);
    int l_max() const { return l_max_; }
    const bigint& operator()(int l, int k) const;
    void dump_csv(std::ostream& os) const;

private:
    int l_max_;
    std::vector<std::vector<bigint>> r_;
};

const bigint& stirling2(int m, int k);
const bigint& r_coeff(int l, int k);
bigint binomial(int n, int k);

// derivative of order `order` at x
using DerivFn = std::function<double(double x, int order)>;

// f(N) = sum_k c_k N^k with exact derivatives
DerivFn power_series_fn(std::vector<double> coeffs);
// order-4 accurate central differences for f^(order), step h
DerivFn finite_difference_fn(std::function<double(double)> f, double h);

// <alpha| f(N) |alpha> = sum_{l<=l_max} sum_k R(l,k)/(k+l)! |alpha|^{2k} f^{(k+l)}(|alpha|^2)
double coherent_expect_series(const DerivFn& f, double alpha2, int l_max);
// |alpha|^2 f'(|alpha|^2)^2
double coherent_variance_leading(const DerivFn& f, double alpha2);

struct TestFunction {
    std::string name;
    std::function<double(double)> value;
    DerivFn deriv;
};

// polynomials up to degree 4, cosh(sqrt(N) x), sinh(sqrt(N) x)/sqrt(N) with x = 0.2
std::vector<TestFunction> moments_test_set();

// sum_n e^{-a} a^n/n! f(n), summed until the Poisson weights fall below 1e-18 past the peak
double poisson_expect(const std::function<double(double)>& f, double alpha2);

}  // namespace wfx
