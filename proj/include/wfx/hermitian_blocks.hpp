#pragma once

#include <functional>
#include <vector>

#include "wfx/fock.hpp"

namespace wfx {

// Exact eigendecomposition of a sparse Hermitian matrix, one dense block per
// connected component of its sparsity graph.
class HermitianBlocks {
public:
    struct Block {
        std::vector<Eigen::Index> idx;
        Eigen::VectorXd evals;
        Eigen::MatrixXcd evecs;
    };

    explicit HermitianBlocks(const SpMat& h, double herm_tol = 1e-9);

    Eigen::Index dim() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t largest_block() const;

    SpMat apply(const std::function<cplx(double)>& f) const;
    Vec apply(const std::function<cplx(double)>& f, const Vec& v) const;

    // exp(-i H t)
    SpMat unitary(double t) const;
    Vec evolve(const Vec& v, double t) const;

private:
    Eigen::Index n_ = 0;
    std::vector<Block> blocks_;
};

}  // namespace wfx
