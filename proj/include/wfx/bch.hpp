#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wfx/fock.hpp"

namespace wfx {

// coefficient k multiplies (chi t)^k: i^k ad_{H'}^k(a) / k!
struct BchSeries {
    std::vector<SpMat> coeff;
};
BchSeries bch_coefficients(const SpMat& h_prime, const SpMat& a, int k_max);

struct TaylorFit {
    std::vector<SpMat> coeff;  // coefficient of (chi t)^k
    double condition = 0.0;    // Vandermonde 2-norm condition number
};

std::vector<cplx> default_real_samples();                         // 1e-3 * j, j = 1..7
std::vector<cplx> circle_samples(double radius = 0.5, int n = 32);  // radius * exp(2 pi i j / n)

TaylorFit taylor_fit(const std::function<SpMat(cplx)>& builder, const std::vector<cplx>& samples, int k_max,
                     double max_condition = 1e10);

// occupations <= dim-1-band in every mode
std::vector<bool> guard_mask(const FockSpace& s, int band = 2);
double max_entry_gap(const SpMat& d, const std::vector<bool>& inner);

// Worst violation of the operator-degree rule for a Taylor-minus-BCH difference D at
// power k, for a closed form truncated at weak-field order `order` with the given strong
// mode. Within each family of entries sharing weak occupations and strong shift delta,
// the entries divided by sqrt(n_max!/n_min!) must be a polynomial in the strong
// occupation of degree < ceil((k + 1 - order - delta)/2); t-fold differences vanish.
double degree_filtered_gap(const FockSpace& s, const SpMat& d, int strong_mode, int k, int order,
                           const std::vector<bool>& inner);

struct BchRow {
    std::string form;
    int order;  // chi_t power
    double raw_gap;
    double filtered_gap;
    int guard_band;
    double condition;
};

struct BchCase {
    std::string name;
    int strong_mode;
    int form_order;
    std::function<SpMat(cplx)> builder;
    SpMat bare;  // operator whose Heisenberg series is compared
};

std::vector<BchRow> bch_compare(const FockSpace& s, const SpMat& h_prime, const BchCase& c, int k_max,
                                const std::vector<cplx>& samples, int band = 2);

// The nine closed forms on the standard spaces: PDC (6,4,4), state transfer pump/signal 4, idler 6.
std::vector<BchRow> bch_report(int k_max = 4, int band = 2);

}  // namespace wfx
