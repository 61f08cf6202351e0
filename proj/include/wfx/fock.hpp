#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wfx {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

enum class Role { pump, signal, idler, signal_k, idler_k };

std::string role_name(Role r);

struct ModeSpec {
    Role role;
    int dim;
    int pair = 0;  // index k for signal_k / idler_k
};

class FockSpace {
public:
    static constexpr std::size_t default_max_dim = 200000;

    explicit FockSpace(std::vector<ModeSpec> modes, std::size_t max_dim = default_max_dim);

    std::size_t total_dim() const { return total_; }
    int num_modes() const { return static_cast<int>(modes_.size()); }
    const ModeSpec& mode(int m) const { return modes_.at(m); }
    const std::vector<ModeSpec>& modes() const { return modes_; }
    int dim(int m) const { return modes_.at(m).dim; }

    // -1 when absent
    int find(Role r, int pair = 0) const;
    int require(Role r, int pair = 0) const;

    int occupation(std::size_t index, int m) const {
        return static_cast<int>((index / stride_[m]) % modes_[m].dim);
    }
    std::vector<int> occupations(std::size_t index) const;
    std::size_t index(const std::vector<int>& occ) const;
    std::size_t stride(int m) const { return stride_[m]; }

    bool operator==(const FockSpace& o) const;
    bool operator!=(const FockSpace& o) const { return !(*this == o); }

private:
    std::vector<ModeSpec> modes_;
    std::vector<std::size_t> stride_;
    std::size_t total_ = 1;
};

FockSpace make_space(const std::vector<ModeSpec>& specs, std::size_t max_dim = FockSpace::default_max_dim);

struct OperatorMatrix {
    SpMat mat;
    bool hermitian = false;
};

class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double leakage)
        : std::runtime_error(what), leakage(leakage) {}
    double leakage;
};

struct StateVector {
    Vec amps;
    double leakage = 0.0;  // Poisson/normalization mass lost to truncation before renormalizing
};

SpMat dagger(const SpMat& m);
SpMat identity(const FockSpace& s);
double max_abs(const SpMat& m);
double hermiticity_gap(const SpMat& m);

OperatorMatrix annihilation(const FockSpace& s, int mode);
OperatorMatrix creation(const FockSpace& s, int mode);
OperatorMatrix number_op(const FockSpace& s, int mode);

// diagonal matrix f(n) on one mode
template <class F>
SpMat diagonal_of(const FockSpace& s, int mode, F&& f) {
    const std::size_t n = s.total_dim();
    SpMat d(n, n);
    d.reserve(Eigen::VectorXi::Constant(static_cast<Eigen::Index>(n), 1));
    for (std::size_t i = 0; i < n; ++i) {
        cplx v = f(s.occupation(i, mode));
        if (v != cplx(0.0)) d.insert(i, i) = v;
    }
    d.makeCompressed();
    return d;
}

// single-mode coherent amplitudes truncated at dim; tail is the missing Poisson mass
struct ModeAmplitudes {
    std::vector<cplx> amps;
    double tail = 0.0;
};
ModeAmplitudes coherent_amplitudes(int dim, cplx alpha);

StateVector coherent_state(const FockSpace& s, int mode, cplx alpha, double max_tail = 1e-6);
StateVector fock_state(const FockSpace& s, const std::vector<int>& occ);
// tensor product of per-mode amplitude vectors (each renormalized)
StateVector product_state(const FockSpace& s, const std::vector<std::vector<cplx>>& per_mode);

// population in the top `band` occupation levels of each mode, maximized over modes
double guard_leakage(const FockSpace& s, const Vec& psi, int band = 2);
double mode_band_population(const FockSpace& s, const Vec& psi, int mode, int band = 2);

// smallest dim whose top `band` levels plus everything above hold < tol of the distribution
int poisson_dim(double mean, double tol, int band = 2);
int thermal_dim(double mean, double tol, int band = 2);

cplx expect(const Vec& psi, const SpMat& op);
double expect_real(const Vec& psi, const SpMat& op);

}  // namespace wfx
