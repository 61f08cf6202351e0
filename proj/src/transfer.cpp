#include "wfx/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wfx/expansion.hpp"
#include "wfx/number_functions.hpp"
#include "wfx/oracle.hpp"

namespace wfx {

namespace {

constexpr double pi = std::numbers::pi;

double s_plus(double g) { return std::real(eval(NumberFn::s_plus_over_N32, 1.0, cplx(g, 0.0))); }

// <N>, <N^2> of O^dag O on psi
std::pair<double, double> number_moments(const SpMat& o, const Vec& psi) {
    Vec v = o * psi;
    Vec w = dagger(o) * v;
    return {v.squaredNorm(), w.squaredNorm()};
}

std::pair<double, double> number_moments_diag(const SpMat& n, const Vec& psi) {
    Vec v = n * psi;
    return {std::real(psi.dot(v)), v.squaredNorm()};
}

}  // namespace

SourceMoments source_moments(const SourceState& src) {
    const double x = src.value;
    if (!(x >= 0.0)) throw std::invalid_argument("source value must be >= 0");
    if (src.kind == SourceKind::fock) {
        if (x != std::floor(x)) throw std::invalid_argument("fock source needs an integer photon number");
        return {x, x * x, x * x * x};
    }
    return {x, x * x + x, x * x * x + 3 * x * x + x};
}

double transfer_m(const TransferConfig& c) { return source_moments(c.source).n1 / std::norm(c.alpha_i); }

double transfer_mean_q(double g, double alpha_i2, TransferDirection dir, double fano_minus_one) {
    const double base = 0.5 * g * std::cos(2 * g);
    if (dir == TransferDirection::pump_to_signal)
        return g / (2 * alpha_i2) * (base + 0.75 * std::sin(2 * g) + fano_minus_one * s_plus(g) * std::sin(g));
    return g / (2 * alpha_i2) * (base - 0.25 * std::sin(2 * g) - fano_minus_one * s_plus(g) * std::sin(g));
}

double transfer_variance_opt_gain(const SourceMoments& mo, double alpha_i2, TransferDirection dir, double g,
                                 double n_cl_2t) {
    const double n = mo.n1;
    const double s = std::sin(g), s2 = s * s, s3 = s2 * s;
    const double fano1 = n > 0.0 ? mo.variance() / n - 1.0 : 0.0;
    const double cov = 2.0 * transfer_mean_q(g, alpha_i2, dir, 0.0) * (s2 * mo.n2 - n * n);
    const double twice = 0.25 * (n_cl_2t + n * transfer_mean_q(2 * g, alpha_i2, dir, fano1));
    const double fluct = mo.n2 / (4 * alpha_i2) * g * g * std::pow(std::sin(2 * g), 2);
    const double tail = (mo.variance() - n) / (4 * alpha_i2) * s3 * std::cos(g) *
                        (std::sin(4 * g) - std::sin(2 * g) - 2 * g);
    if (dir == TransferDirection::pump_to_signal)
        return cov + twice + fluct - mo.fact2() / (2 * alpha_i2) * s3 * s_plus(g) + tail;
    return cov + twice + fluct + s3 / (2 * alpha_i2) * (mo.fact2() * s_plus(g) + 2 * n * g * std::cos(g)) - tail;
}

double transfer_variance_general(const SourceMoments& mo, double alpha_i2) {
    const double m = mo.n1 / alpha_i2;
    return pi * pi * m / 16 *
           (1.0 - mo.fact2() / alpha_i2 + 2.0 / alpha_i2 * (mo.n_fact2() - mo.n2 * mo.n1));
}

double transfer_variance_coherent(double source_n, double alpha_i2) {
    const double m = source_n / alpha_i2;
    return pi * pi * m / 16 * (1.0 + m * source_n);
}

double transfer_loss_ratio(double alpha_i2) { return 1.0 - pi * pi / (16 * alpha_i2); }

TransferResult transfer_loss_and_variance(const TransferConfig& c, TransferMethods which) {
    const double ai2 = std::norm(c.alpha_i);
    if (!(ai2 > 0.0)) throw std::invalid_argument("alpha_i must be nonzero");
    TransferResult r;
    r.source = source_moments(c.source);
    r.m = r.source.n1 / ai2;
    if (!(r.m < 0.5)) throw std::invalid_argument("transfer: m = <N_source>/|alpha_i|^2 must be < 0.5");
    r.g_opt = optimal_transfer_gain(r.m, c.direction);
    r.t_opt = r.g_opt / std::sqrt(ai2);

    const bool ps = c.direction == TransferDirection::pump_to_signal;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto classical_target = [&](double t) {
        const cplx src = std::sqrt(r.source.n1);
        ClassicalAmplitudes a0 = ps ? ClassicalAmplitudes{src, 0.0, c.alpha_i} : ClassicalAmplitudes{0.0, src, c.alpha_i};
        ClassicalAmplitudes a = classical_twm_evolve(a0, 1.0, t);
        return std::norm(ps ? a.a_s : a.a_p);
    };
    r.n_cl = classical_target(r.t_opt);
    const double var0 = r.source.variance();

    if (which.formula) {
        const double fano1 = r.source.n1 > 0.0 ? var0 / r.source.n1 - 1.0 : 0.0;
        r.rows.push_back({"formula_loss", "N_target_mean", r.source.n1 * transfer_loss_ratio(ai2), 0.0});
        r.rows.push_back({"formula_loss", "N_target_var", var0, 0.0});
        r.rows.push_back(
            {"formula_mean", "N_target_mean", r.n_cl + r.source.n1 * transfer_mean_q(r.g_opt, ai2, c.direction, fano1), 0.0});
        r.rows.push_back({"formula_general", "delta_var", transfer_variance_general(r.source, ai2), 0.0});
        r.rows.push_back({"formula_coherent", "delta_var",
                          c.source.kind == SourceKind::coherent ? transfer_variance_coherent(r.source.n1, ai2) : nan, 0.0});
        r.rows.push_back({"formula_opt_gain", "delta_var",
                          transfer_variance_opt_gain(r.source, ai2, c.direction, r.g_opt, classical_target(2 * r.t_opt)), 0.0});
    }
    if (!which.expansion && !which.oracle) return r;

    const double tol = c.leakage_tol * 1e-2;
    const int sdim = c.source_dim > 0 ? c.source_dim
                     : c.source.kind == SourceKind::fock ? static_cast<int>(c.source.value) + 3
                                                          : poisson_dim(c.source.value, tol);
    const int idim = c.idler_dim > 0 ? c.idler_dim : poisson_dim(ai2, tol) + sdim;
    FockSpace s = make_space({{Role::pump, sdim}, {Role::signal, sdim}, {Role::idler, idim}});
    const int src_mode = ps ? 0 : 1, tgt_mode = ps ? 1 : 0;

    std::vector<cplx> src_amps;
    if (c.source.kind == SourceKind::fock) {
        src_amps.assign(sdim, 0.0);
        src_amps.at(static_cast<std::size_t>(c.source.value)) = 1.0;
    } else {
        src_amps = coherent_amplitudes(sdim, std::sqrt(c.source.value)).amps;
    }
    std::vector<cplx> vac(sdim, 0.0);
    vac[0] = 1.0;
    auto idl = coherent_amplitudes(idim, c.alpha_i);
    StateVector in = product_state(s, ps ? std::vector<std::vector<cplx>>{src_amps, vac, idl.amps}
                                         : std::vector<std::vector<cplx>>{vac, src_amps, idl.amps});
    const double leak0 = std::max(idl.tail, guard_leakage(s, in.amps));
    const auto [n_src, n2_src] = number_moments_diag(number_op(s, src_mode).mat, in.amps);
    const double var_src = n2_src - n_src * n_src;

    if (which.expansion) {
        StOrders o = st_orders(s, cplx(r.t_opt, 0.0));
        const SpMat& o1 = ps ? o.s1 : o.p1;
        const SpMat o13 = ps ? SpMat(o.s1 + o.s3) : SpMat(o.p1 + o.p3);
        for (auto [tag, op] : {std::pair<const char*, const SpMat*>{"expansion_o1", &o1}, {"expansion", &o13}}) {
            auto [n, n2] = number_moments(*op, in.amps);
            r.rows.push_back({tag, "N_target_mean", n, leak0});
            r.rows.push_back({tag, "N_target_var", n2 - n * n, leak0});
            r.rows.push_back({tag, "delta_var", n2 - n * n - var_src, leak0});
        }
    }
    if (which.oracle) {
        Propagator u(make_hamiltonian(s, 1.0));
        Vec psi = u.evolve(in.amps, r.t_opt);
        const double leak = std::max(leak0, guard_leakage(s, psi));
        if (leak > c.leakage_tol) throw TruncationError("transfer oracle: guard-band population above tolerance", leak);
        auto [n, n2] = number_moments_diag(number_op(s, tgt_mode).mat, psi);
        r.rows.push_back({"oracle", "N_target_mean", n, leak});
        r.rows.push_back({"oracle", "N_target_var", n2 - n * n, leak});
        r.rows.push_back({"oracle", "delta_var", n2 - n * n - var_src, leak});
    }
    return r;
}

}  // namespace wfx
