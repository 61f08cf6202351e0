#include "wfx/fock.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

namespace wfx {

std::string role_name(Role r) {
    switch (r) {
        case Role::pump: return "pump";
        case Role::signal: return "signal";
        case Role::idler: return "idler";
        case Role::signal_k: return "signal_k";
        case Role::idler_k: return "idler_k";
    }
    return "?";
}

FockSpace::FockSpace(std::vector<ModeSpec> modes, std::size_t max_dim) : modes_(std::move(modes)) {
    if (modes_.empty()) throw std::invalid_argument("FockSpace needs at least one mode");
    for (const auto& m : modes_) {
        if (m.dim < 2) throw std::invalid_argument("mode dimension must be >= 2");
        if (total_ > max_dim / static_cast<std::size_t>(m.dim))
            throw std::invalid_argument("total dimension exceeds limit " + std::to_string(max_dim));
        total_ *= static_cast<std::size_t>(m.dim);
    }
    for (std::size_t i = 0; i < modes_.size(); ++i)
        for (std::size_t j = i + 1; j < modes_.size(); ++j)
            if (modes_[i].role == modes_[j].role && modes_[i].pair == modes_[j].pair)
                throw std::invalid_argument("duplicate mode " + role_name(modes_[i].role));
    // first-listed mode slowest
    stride_.assign(modes_.size(), 1);
    for (int m = static_cast<int>(modes_.size()) - 2; m >= 0; --m)
        stride_[m] = stride_[m + 1] * static_cast<std::size_t>(modes_[m + 1].dim);
}

int FockSpace::find(Role r, int pair) const {
    for (int m = 0; m < num_modes(); ++m)
        if (modes_[m].role == r && modes_[m].pair == pair) return m;
    return -1;
}

int FockSpace::require(Role r, int pair) const {
    int m = find(r, pair);
    if (m < 0) throw std::invalid_argument("unknown mode " + role_name(r) + "[" + std::to_string(pair) + "]");
    return m;
}

std::vector<int> FockSpace::occupations(std::size_t index) const {
    std::vector<int> occ(modes_.size());
    for (int m = 0; m < num_modes(); ++m) occ[m] = occupation(index, m);
    return occ;
}

std::size_t FockSpace::index(const std::vector<int>& occ) const {
    if (occ.size() != modes_.size()) throw std::invalid_argument("occupation tuple has wrong length");
    std::size_t idx = 0;
    for (int m = 0; m < num_modes(); ++m) {
        if (occ[m] < 0 || occ[m] >= modes_[m].dim) throw std::out_of_range("occupation outside truncation");
        idx += stride_[m] * static_cast<std::size_t>(occ[m]);
    }
    return idx;
}

bool FockSpace::operator==(const FockSpace& o) const {
    if (modes_.size() != o.modes_.size()) return false;
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (modes_[i].role != o.modes_[i].role || modes_[i].dim != o.modes_[i].dim || modes_[i].pair != o.modes_[i].pair)
            return false;
    return true;
}

FockSpace make_space(const std::vector<ModeSpec>& specs, std::size_t max_dim) { return FockSpace(specs, max_dim); }

SpMat dagger(const SpMat& m) { return SpMat(m.adjoint()); }

SpMat identity(const FockSpace& s) {
    SpMat id(s.total_dim(), s.total_dim());
    id.setIdentity();
    return id;
}

double max_abs(const SpMat& m) {
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
}

double hermiticity_gap(const SpMat& m) { return max_abs(SpMat(m - dagger(m))); }

namespace {

SpMat ladder(const FockSpace& s, int mode, bool raise) {
    if (mode < 0 || mode >= s.num_modes()) throw std::invalid_argument("unknown mode index");
    const std::size_t n = s.total_dim();
    const std::size_t st = s.stride(mode);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(n);
    for (std::size_t col = 0; col < n; ++col) {
        int k = s.occupation(col, mode);
        if (!raise && k > 0) trip.emplace_back(col - st, col, std::sqrt(double(k)));
        if (raise && k + 1 < s.dim(mode)) trip.emplace_back(col + st, col, std::sqrt(double(k + 1)));
    }
    SpMat a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

}  // namespace

OperatorMatrix annihilation(const FockSpace& s, int mode) { return {ladder(s, mode, false), false}; }
OperatorMatrix creation(const FockSpace& s, int mode) { return {ladder(s, mode, true), false}; }

OperatorMatrix number_op(const FockSpace& s, int mode) {
    if (mode < 0 || mode >= s.num_modes()) throw std::invalid_argument("unknown mode index");
    return {diagonal_of(s, mode, [](int k) { return cplx(k); }), true};
}

ModeAmplitudes coherent_amplitudes(int dim, cplx alpha) {
    ModeAmplitudes out;
    out.amps.resize(dim);
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        out.amps[0] = 1.0;
        return out;
    }
    // log-space Poisson weights
    const double la = std::log(std::abs(alpha));
    const double ph = std::arg(alpha);
    double mass = 0.0;
    for (int n = 0; n < dim; ++n) {
        double lw = n * la - 0.5 * std::lgamma(n + 1.0) - 0.5 * a2;
        double w = std::exp(lw);
        out.amps[n] = std::polar(w, n * ph);
        mass += w * w;
    }
    out.tail = std::max(0.0, 1.0 - mass);
    return out;
}

StateVector product_state(const FockSpace& s, const std::vector<std::vector<cplx>>& per_mode) {
    if (static_cast<int>(per_mode.size()) != s.num_modes()) throw std::invalid_argument("one amplitude vector per mode");
    std::vector<std::vector<cplx>> nm = per_mode;
    double lost = 0.0;
    for (int m = 0; m < s.num_modes(); ++m) {
        if (static_cast<int>(nm[m].size()) != s.dim(m)) throw std::invalid_argument("amplitude vector length != mode dim");
        double nrm = 0.0;
        for (auto v : nm[m]) nrm += std::norm(v);
        if (nrm == 0.0) throw std::invalid_argument("zero amplitude vector");
        lost = std::max(lost, 1.0 - nrm);
        for (auto& v : nm[m]) v /= std::sqrt(nrm);
    }
    StateVector st;
    st.amps.resize(static_cast<Eigen::Index>(s.total_dim()));
    for (std::size_t i = 0; i < s.total_dim(); ++i) {
        cplx v = 1.0;
        for (int m = 0; m < s.num_modes() && v != cplx(0.0); ++m) v *= nm[m][s.occupation(i, m)];
        st.amps[static_cast<Eigen::Index>(i)] = v;
    }
    st.leakage = std::max(0.0, lost);
    return st;
}

StateVector coherent_state(const FockSpace& s, int mode, cplx alpha, double max_tail) {
    if (mode < 0 || mode >= s.num_modes()) throw std::invalid_argument("unknown mode index");
    auto ca = coherent_amplitudes(s.dim(mode), alpha);
    if (ca.tail > max_tail) {
        std::ostringstream os;
        os << "truncation " << s.dim(mode) << " too small for |alpha|^2 = " << std::norm(alpha) << " (tail " << ca.tail << ")";
        throw TruncationError(os.str(), ca.tail);
    }
    std::vector<std::vector<cplx>> pm(s.num_modes());
    for (int m = 0; m < s.num_modes(); ++m) {
        pm[m].assign(s.dim(m), 0.0);
        pm[m][0] = 1.0;
    }
    pm[mode] = ca.amps;
    auto st = product_state(s, pm);
    st.leakage = ca.tail;
    return st;
}

StateVector fock_state(const FockSpace& s, const std::vector<int>& occ) {
    StateVector st;
    st.amps = Vec::Zero(static_cast<Eigen::Index>(s.total_dim()));
    st.amps[static_cast<Eigen::Index>(s.index(occ))] = 1.0;
    return st;
}

double mode_band_population(const FockSpace& s, const Vec& psi, int mode, int band) {
    double p = 0.0;
    const int lo = s.dim(mode) - band;
    for (std::size_t i = 0; i < s.total_dim(); ++i)
        if (s.occupation(i, mode) >= lo) p += std::norm(psi[static_cast<Eigen::Index>(i)]);
    return p;
}

double guard_leakage(const FockSpace& s, const Vec& psi, int band) {
    double worst = 0.0;
    for (int m = 0; m < s.num_modes(); ++m) worst = std::max(worst, mode_band_population(s, psi, m, band));
    return worst;
}

cplx expect(const Vec& psi, const SpMat& op) { return psi.dot(op * psi); }
double expect_real(const Vec& psi, const SpMat& op) { return expect(psi, op).real(); }

int poisson_dim(double mean, double tol, int band) {
    if (!(mean >= 0.0) || !(tol > 0.0)) throw std::invalid_argument("poisson_dim: bad arguments");
    if (mean == 0.0) return band + 1;
    int k = 1;  // P(N >= k) = P(k, mean)
    while (boost::math::gamma_p(double(k), mean) >= tol) ++k;
    return k + band;
}

int thermal_dim(double mean, double tol, int band) {
    if (!(mean >= 0.0) || !(tol > 0.0) || tol >= 1.0) throw std::invalid_argument("thermal_dim: bad arguments");
    if (mean == 0.0) return band + 1;
    // P(N >= k) = r^k
    const double r = mean / (mean + 1.0);
    int k = static_cast<int>(std::ceil(std::log(tol) / std::log(r)));
    return std::max(k, 1) + band;
}

}  // namespace wfx
