#pragma once

#include "wfx/fock.hpp"
#include "wfx/quadrature.hpp"
#include "wfx/scenarios.hpp"

namespace wfx {

enum class SourceKind { coherent, fock };

struct SourceState {
    SourceKind kind = SourceKind::fock;
    double value = 1.0;  // |alpha|^2 (real, positive amplitude) or photon number
};

struct SourceMoments {
    double n1 = 0.0, n2 = 0.0, n3 = 0.0;  // <N>, <N^2>, <N^3>
    double variance() const { return n2 - n1 * n1; }
    double fact2() const { return n2 - n1; }     // <a^dag2 a^2>
    double n_fact2() const { return n3 - n2; }   // <N a^dag2 a^2>
};
SourceMoments source_moments(const SourceState& src);

struct TransferConfig {
    cplx alpha_i = 5.0;
    SourceState source;
    TransferDirection direction = TransferDirection::pump_to_signal;
    int source_dim = 0, idler_dim = 0;  // 0 picks from the distributions; target dim = source dim
    double leakage_tol = default_leakage_tol;
};

double transfer_m(const TransferConfig& c);

// q(g) of the first mean correction: (<N_target> - N_cl) / <N_source>
double transfer_mean_q(double g, double alpha_i2, TransferDirection dir, double fano_minus_one);

// Variance change at the optimal gain, second-order moments kept. The covariance term is evaluated with
// N_target(t_opt) - N_source ~ q(g) N_source (Fano part dropped) and the 2 t_opt target with the
// classical part from RK4.
double transfer_variance_opt_gain(const SourceMoments& mo, double alpha_i2, TransferDirection dir, double g,
                                 double n_cl_2t);

double transfer_variance_general(const SourceMoments& mo, double alpha_i2);   // pi^2 m/16 [1 - ... ]
double transfer_variance_coherent(double source_n, double alpha_i2);          // pi^2 m/16 (1 + m |alpha|^2)
double transfer_loss_ratio(double alpha_i2);                                  // 1 - pi^2/(16 |alpha_i|^2)

struct TransferResult {
    double m = 0.0, g_opt = 0.0, t_opt = 0.0;
    SourceMoments source;
    double n_cl = 0.0;  // classical target intensity at t_opt
    // names: N_target_mean, N_target_var, delta_var
    ObservableSet rows;
};

struct TransferMethods {
    bool formula = true, expansion = true, oracle = true;
};

// throws std::invalid_argument when m >= 0.5, TruncationError when the oracle leaks
TransferResult transfer_loss_and_variance(const TransferConfig& c, TransferMethods which = {});

}  // namespace wfx
