#include "wfx/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace wfx {

StirlingTable::StirlingTable(int m_max) : m_max_(m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
    s_.assign(m_max + 1, std::vector<bigint>(m_max + 1, 0));
    s_[0][0] = 1;
    for (int m = 1; m <= m_max; ++m)
        for (int k = 1; k <= m; ++k) s_[m][k] = bigint(k) * s_[m - 1][k] + s_[m - 1][k - 1];
}

const bigint& StirlingTable::operator()(int m, int k) const {
    if (m < 0 || k < 0 || m > m_max_ || k > m_max_) throw std::out_of_range("stirling index out of range");
    return s_[m][k];
}

bigint StirlingTable::bell(int m) const {
    bigint b = 0;
    for (int k = 0; k <= m; ++k) b += (*this)(m, k);
    return b;
}

void StirlingTable::dump_csv(std::ostream& os) const {
    os << "l,k,value\n";
    for (int m = 0; m <= m_max_; ++m)
        for (int k = 0; k <= m; ++k) os << m << ',' << k << ',' << s_[m][k] << '\n';
}

RTable::RTable(int l_max) : l_max_(l_max) {
    if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
    r_.assign(l_max + 1, std::vector<bigint>(l_max + 1, 0));
    r_[0][0] = 1;
    for (int l = 1; l <= l_max; ++l)
        for (int k = 0; k <= l; ++k) {
            bigint v = bigint(k) * r_[l - 1][k];
            if (k > 0) v += bigint(k + l - 1) * r_[l - 1][k - 1];
            r_[l][k] = v;
        }
}

const bigint& RTable::operator()(int l, int k) const {
    if (l < 0 || k < 0 || l > l_max_ || k > l_max_) throw std::out_of_range("R index out of range");
    return r_[l][k];
}

void RTable::dump_csv(std::ostream& os) const {
    os << "l,k,value\n";
    for (int l = 0; l <= l_max_; ++l)
        for (int k = 0; k <= l; ++k) os << l << ',' << k << ',' << r_[l][k] << '\n';
}

const bigint& stirling2(int m, int k) {
    static const StirlingTable t(30);
    return t(m, k);
}

const bigint& r_coeff(int l, int k) {
    static const RTable t(12);
    return t(l, k);
}

bigint binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    bigint r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

DerivFn power_series_fn(std::vector<double> c) {
    return [c = std::move(c)](double x, int order) {
        double acc = 0.0;
        for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
            double ff = 1.0;  // k!/(k-order)!
            for (int j = 0; j < order; ++j) ff *= double(k - j);
            acc = acc * x + c[k] * ff;
        }
        return acc;
    };
}

namespace {

// Fornberg weights for derivative `m` at 0 on nodes x
std::vector<double> fornberg(const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<std::vector<double>>> d(n + 1, std::vector<std::vector<double>>(n + 1, std::vector<double>(m + 1, 0.0)));
    d[0][0][0] = 1.0;
    double c1 = 1.0;
    for (int i = 1; i <= n; ++i) {
        double c2 = 1.0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            for (int k = 0; k <= std::min(i, m); ++k) {
                double prev = (k > 0) ? d[i - 1][j][k - 1] : 0.0;
                d[i][j][k] = (x[i] * d[i - 1][j][k] - k * prev) / c3;
            }
        }
        for (int k = 0; k <= std::min(i, m); ++k) {
            double prev = (k > 0) ? d[i - 1][i - 1][k - 1] : 0.0;
            d[i][i][k] = c1 / c2 * (k * prev - x[i - 1] * d[i - 1][i - 1][k]);
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int j = 0; j <= n; ++j) w[j] = d[n][j][m];
    return w;
}

}  // namespace

DerivFn finite_difference_fn(std::function<double(double)> f, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite difference step must be positive");
    return [f = std::move(f), h](double x, int order) {
        if (order == 0) return f(x);
        const int p = (order + 3) / 2;
        std::vector<double> nodes;
        for (int j = -p; j <= p; ++j) nodes.push_back(j);
        auto w = fornberg(nodes, order);
        double acc = 0.0;
        for (int j = -p; j <= p; ++j) {
            double v = f(x + j * h);
            if (!std::isfinite(v)) throw std::domain_error("derivative evaluation failed");
            acc += w[j + p] * v;
        }
        return acc / std::pow(h, order);
    };
}

double coherent_expect_series(const DerivFn& f, double alpha2, int l_max) {
    if (l_max < 0 || l_max > 12) throw std::out_of_range("l_max must be in 0..12");
    double total = 0.0;
    for (int l = 0; l <= l_max; ++l)
        for (int k = 0; k <= l; ++k) {
            const bigint& r = r_coeff(l, k);
            if (r == 0) continue;
            double d = f(alpha2, k + l);
            if (!std::isfinite(d)) throw std::domain_error("derivative evaluation failed");
            total += r.convert_to<double>() / std::tgamma(k + l + 1.0) * std::pow(alpha2, k) * d;
        }
    return total;
}

double coherent_variance_leading(const DerivFn& f, double alpha2) {
    double d = f(alpha2, 1);
    return alpha2 * d * d;
}

std::vector<TestFunction> moments_test_set() {
    auto poly = [](std::string name, std::vector<double> c) {
        auto d = power_series_fn(c);
        return TestFunction{std::move(name), [d](double x) { return d(x, 0); }, d};
    };
    std::vector<TestFunction> out;
    out.push_back(poly("N", {0, 1}));
    out.push_back(poly("N^2", {0, 0, 1}));
    out.push_back(poly("N^3-2N^2+N", {0, 1, -2, 1}));
    out.push_back(poly("N^4", {0, 0, 0, 0, 1}));
    const double x = 0.2;
    std::vector<double> ch, sh;
    for (int k = 0; k < 40; ++k) {
        ch.push_back(std::pow(x, 2 * k) / std::tgamma(2 * k + 1.0));
        sh.push_back(std::pow(x, 2 * k + 1) / std::tgamma(2 * k + 2.0));
    }
    out.push_back({"cosh(0.2 sqrt N)", [x](double n) { return std::cosh(x * std::sqrt(n)); }, power_series_fn(ch)});
    out.push_back({"sinh(0.2 sqrt N)/sqrt N",
                   [x](double n) { return n == 0.0 ? x : std::sinh(x * std::sqrt(n)) / std::sqrt(n); },
                   power_series_fn(sh)});
    return out;
}

double poisson_expect(const std::function<double(double)>& f, double alpha2) {
    if (!(alpha2 >= 0.0)) throw std::invalid_argument("alpha2 must be >= 0");
    if (alpha2 == 0.0) return f(0.0);
    double acc = 0.0;
    for (int n = 0;; ++n) {
        double w = std::exp(n * std::log(alpha2) - alpha2 - std::lgamma(n + 1.0));
        acc += w * f(n);
        if (n > alpha2 && w < 1e-18) break;
    }
    return acc;
}

}  // namespace wfx
