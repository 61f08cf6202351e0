#include "wfx/bch.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include <Eigen/SVD>

#include "wfx/expansion.hpp"
#include "wfx/oracle.hpp"

namespace wfx {

BchSeries bch_coefficients(const SpMat& h, const SpMat& a, int k_max) {
    if (k_max < 0 || k_max > 6) throw std::invalid_argument("k_max must be in 0..6");
    if (h.rows() != a.rows() || h.cols() != a.cols() || h.rows() != h.cols()) throw std::invalid_argument("dimension mismatch");
    BchSeries out;
    out.coeff.push_back(a);
    SpMat cur = a;
    cplx pref = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        cur = SpMat(h * cur - cur * h);
        cur.prune(cplx(0.0));
        pref *= cplx(0.0, 1.0) / double(k);
        out.coeff.push_back(pref * cur);
    }
    return out;
}

std::vector<cplx> default_real_samples() {
    std::vector<cplx> s;
    for (int j = 1; j <= 7; ++j) s.emplace_back(1e-3 * j, 0.0);
    return s;
}

std::vector<cplx> circle_samples(double radius, int n) {
    std::vector<cplx> s;
    for (int j = 0; j < n; ++j) s.push_back(std::polar(radius, 2.0 * std::numbers::pi * j / n));
    return s;
}

TaylorFit taylor_fit(const std::function<SpMat(cplx)>& builder, const std::vector<cplx>& samples, int k_max,
                     double max_condition) {
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (static_cast<int>(samples.size()) < k_max + 2) throw std::invalid_argument("need at least k_max + 2 samples");
    const auto ns = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXcd V(ns, k_max + 1);
    for (Eigen::Index j = 0; j < ns; ++j)
        for (int k = 0; k <= k_max; ++k) V(j, k) = std::pow(samples[j], k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    TaylorFit fit;
    fit.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(fit.condition <= max_condition)) throw std::runtime_error("taylor_fit: ill-conditioned Vandermonde system");

    std::vector<SpMat> mats;
    std::map<std::pair<Eigen::Index, Eigen::Index>, Eigen::Index> slot;
    for (const auto& x : samples) {
        mats.push_back(builder(x));
        const auto& m = mats.back();
        for (int c = 0; c < m.outerSize(); ++c)
            for (SpMat::InnerIterator it(m, c); it; ++it)
                slot.emplace(std::make_pair(it.row(), it.col()), static_cast<Eigen::Index>(slot.size()));
    }
    const Eigen::Index rows = mats.front().rows(), cols = mats.front().cols();
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(ns, static_cast<Eigen::Index>(slot.size()));
    for (Eigen::Index j = 0; j < ns; ++j) {
        const auto& m = mats[j];
        for (int c = 0; c < m.outerSize(); ++c)
            for (SpMat::InnerIterator it(m, c); it; ++it) Y(j, slot[{it.row(), it.col()}]) += it.value();
    }
    Eigen::MatrixXcd C = svd.solve(Y);
    for (int k = 0; k <= k_max; ++k) {
        std::vector<Eigen::Triplet<cplx>> trip;
        for (const auto& [rc, idx] : slot)
            if (C(k, idx) != cplx(0.0)) trip.emplace_back(rc.first, rc.second, C(k, idx));
        SpMat m(rows, cols);
        m.setFromTriplets(trip.begin(), trip.end());
        fit.coeff.push_back(std::move(m));
    }
    return fit;
}

std::vector<bool> guard_mask(const FockSpace& s, int band) {
    std::vector<bool> in(s.total_dim(), true);
    for (std::size_t i = 0; i < s.total_dim(); ++i)
        for (int m = 0; m < s.num_modes(); ++m)
            if (s.occupation(i, m) > s.dim(m) - 1 - band) in[i] = false;
    return in;
}

double max_entry_gap(const SpMat& d, const std::vector<bool>& inner) {
    double g = 0.0;
    for (int c = 0; c < d.outerSize(); ++c)
        for (SpMat::InnerIterator it(d, c); it; ++it)
            if (inner[it.row()] && inner[it.col()]) g = std::max(g, std::abs(it.value()));
    return g;
}

double degree_filtered_gap(const FockSpace& s, const SpMat& d, int strong, int k, int order, const std::vector<bool>& inner) {
    if (s.total_dim() > 20000) throw std::invalid_argument("degree filter is meant for small spaces");
    Eigen::MatrixXcd D(d);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.total_dim(); ++i)
        if (inner[i]) idx.push_back(i);

    using Key = std::tuple<std::vector<int>, std::vector<int>, int>;
    std::map<Key, std::map<int, cplx>> fam;
    for (auto r : idx)
        for (auto c : idx) {
            auto orow = s.occupations(r), ocol = s.occupations(c);
            int nr = orow[strong], nc = ocol[strong];
            orow.erase(orow.begin() + strong);
            ocol.erase(ocol.begin() + strong);
            fam[Key{orow, ocol, nc - nr}][nc] = D(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }

    double worst = 0.0;
    for (const auto& [key, seq] : fam) {
        const int delta = std::get<2>(key);
        const int tnum = k + 1 - order - delta;
        const int t = tnum <= 0 ? 0 : (tnum + 1) / 2;
        std::vector<cplx> v;
        for (const auto& [n, val] : seq) {
            int m = n - delta;
            double lf = std::lgamma(std::max(n, m) + 1.0) - std::lgamma(std::min(n, m) + 1.0);
            v.push_back(val / std::exp(0.5 * lf));
        }
        for (int j = 0; j < t && !v.empty(); ++j) {
            std::vector<cplx> w;
            for (std::size_t q = 1; q < v.size(); ++q) w.push_back(v[q] - v[q - 1]);
            v = std::move(w);
        }
        for (auto x : v) worst = std::max(worst, std::abs(x));
    }
    return worst;
}

std::vector<BchRow> bch_compare(const FockSpace& s, const SpMat& h_prime, const BchCase& c, int k_max,
                                const std::vector<cplx>& samples, int band) {
    auto inner = guard_mask(s, band);
    auto bch = bch_coefficients(h_prime, c.bare, k_max);
    auto fit = taylor_fit(c.builder, samples, k_max);
    std::vector<BchRow> rows;
    for (int k = 0; k <= k_max; ++k) {
        SpMat d = fit.coeff[k] - bch.coeff[k];
        rows.push_back({c.name, k, max_entry_gap(d, inner), degree_filtered_gap(s, d, c.strong_mode, k, c.form_order, inner),
                        band, fit.condition});
    }
    return rows;
}

std::vector<BchRow> bch_report(int k_max, int band) {
    std::vector<BchRow> out;
    auto samples = circle_samples();
    auto append = [&](const std::vector<BchRow>& r) { out.insert(out.end(), r.begin(), r.end()); };

    {
        FockSpace s = make_space({{Role::pump, 6}, {Role::signal, 4}, {Role::idler, 4}});
        const int p = 0, sg = 1, id = 2;
        SpMat hp = trilinear(s, p, space_pairs(s));
        SpMat ap = annihilation(s, p).mat, as = annihilation(s, sg).mat, ai = annihilation(s, id).mat;
        std::vector<BchCase> cases = {
            {"pdc signal order 1", p, 1, [&](cplx c) { return pdc_order1_weak(s, c).signal; }, as},
            {"pdc idler order 1", p, 1, [&](cplx c) { return pdc_order1_weak(s, c).idler; }, ai},
            {"pdc pump order 2", p, 2,
             [&](cplx c) { return SpMat(ap + pdc_order2_pump(pdc_inputs(s, c), KerrForm::single_pair).total()); }, ap},
            {"pdc pump order 2 multimode kerr", p, 2,
             [&](cplx c) { return SpMat(ap + pdc_order2_pump(pdc_inputs(s, c), KerrForm::multi_mode).total()); }, ap},
            {"pdc signal order 3", p, 3,
             [&](cplx c) { auto in = pdc_inputs(s, c); return SpMat(pdc_order1_weak(in).signal + pdc_order3_weak(in).signal); }, as},
            {"pdc idler order 3", p, 3,
             [&](cplx c) { auto in = pdc_inputs(s, c); return SpMat(pdc_order1_weak(in).idler + pdc_order3_weak(in).idler); }, ai},
        };
        for (const auto& c : cases) append(bch_compare(s, hp, c, k_max, samples, band));
    }
    {
        FockSpace s = make_space({{Role::pump, 4}, {Role::signal, 4}, {Role::idler, 6}});
        const int p = 0, sg = 1, id = 2;
        SpMat hp = trilinear(s, p, space_pairs(s));
        SpMat ap = annihilation(s, p).mat, as = annihilation(s, sg).mat, ai = annihilation(s, id).mat;
        std::vector<BchCase> cases = {
            {"transfer signal order 1", id, 1, [&](cplx c) { return st_orders(s, c).s1; }, as},
            {"transfer pump order 1", id, 1, [&](cplx c) { return st_orders(s, c).p1; }, ap},
            {"transfer idler order 2", id, 2, [&](cplx c) { return SpMat(ai + st_orders(s, c).i2); }, ai},
            {"transfer signal order 3", id, 3, [&](cplx c) { auto o = st_orders(s, c); return SpMat(o.s1 + o.s3); }, as},
            {"transfer pump order 3", id, 3, [&](cplx c) { auto o = st_orders(s, c); return SpMat(o.p1 + o.p3); }, ap},
        };
        for (const auto& c : cases) append(bch_compare(s, hp, c, k_max, samples, band));
    }
    return out;
}

}  // namespace wfx
