#pragma once

namespace wfx {

enum class TransferDirection { pump_to_signal, signal_to_pump };

// int_0^1 du / sqrt((1-u^2)(1-m u^2)), evaluated as int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)
double transfer_gain_integral(double m, double abs_tol = 1e-10);

// classical optimal gain: g_sp = integral, g_ps = g_sp / sqrt(1+m)
double optimal_transfer_gain(double m, TransferDirection dir);

// pi/2 (1 + m/4) and pi/2 (1 - m/4)
double optimal_transfer_gain_approx(double m, TransferDirection dir);

}  // namespace wfx
