#include "wfx/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wfx {

double transfer_gain_integral(double m, double abs_tol) {
    if (!(m >= 0.0) || m >= 1.0) throw std::invalid_argument("m must satisfy 0 <= m < 1");
    if (m == 0.0) return std::numbers::pi / 2;
    auto f = [m](double th) {
        double s = std::sin(th);
        return 1.0 / std::sqrt(1.0 - m * s * s);
    };
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, std::numbers::pi / 2, 20, 1e-13, &err);
    if (!(err <= abs_tol)) throw std::runtime_error("transfer_gain_integral did not converge");
    return v;
}

double optimal_transfer_gain(double m, TransferDirection dir) {
    double gsp = transfer_gain_integral(m);
    return dir == TransferDirection::signal_to_pump ? gsp : gsp / std::sqrt(1.0 + m);
}

double optimal_transfer_gain_approx(double m, TransferDirection dir) {
    return std::numbers::pi / 2 * (dir == TransferDirection::signal_to_pump ? 1.0 + m / 4 : 1.0 - m / 4);
}

}  // namespace wfx
