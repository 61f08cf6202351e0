#include "wfx/hermitian_blocks.hpp"

#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace wfx {

namespace {

struct DisjointSet {
    std::vector<Eigen::Index> parent;
    explicit DisjointSet(Eigen::Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    Eigen::Index find(Eigen::Index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void join(Eigen::Index a, Eigen::Index b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

HermitianBlocks::HermitianBlocks(const SpMat& h, double herm_tol) : n_(h.rows()) {
    if (h.rows() != h.cols()) throw std::invalid_argument("HermitianBlocks: matrix not square");
    if (hermiticity_gap(h) > herm_tol) throw std::invalid_argument("HermitianBlocks: matrix not Hermitian");

    DisjointSet ds(n_);
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it)
            if (it.value() != cplx(0.0)) ds.join(it.row(), it.col());

    std::vector<Eigen::Index> label(n_, -1);
    for (Eigen::Index i = 0; i < n_; ++i) {
        Eigen::Index r = ds.find(i);
        if (label[r] < 0) {
            label[r] = static_cast<Eigen::Index>(blocks_.size());
            blocks_.emplace_back();
        }
        blocks_[label[r]].idx.push_back(i);
    }

    // local position of each global index inside its block
    std::vector<Eigen::Index> pos(n_);
    for (auto& b : blocks_)
        for (std::size_t j = 0; j < b.idx.size(); ++j) pos[b.idx[j]] = static_cast<Eigen::Index>(j);

    std::vector<Eigen::MatrixXcd> dense(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        auto m = static_cast<Eigen::Index>(blocks_[b].idx.size());
        dense[b] = Eigen::MatrixXcd::Zero(m, m);
    }
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it) {
            Eigen::Index b = label[ds.find(it.row())];
            dense[b](pos[it.row()], pos[it.col()]) = it.value();
        }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        auto& blk = blocks_[b];
        if (blk.idx.size() == 1) {
            blk.evals = Eigen::VectorXd::Constant(1, dense[b](0, 0).real());
            blk.evecs = Eigen::MatrixXcd::Identity(1, 1);
            continue;
        }
        Eigen::MatrixXcd sym = 0.5 * (dense[b] + dense[b].adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
        blk.evals = es.eigenvalues();
        blk.evecs = es.eigenvectors();
    }
}

std::size_t HermitianBlocks::largest_block() const {
    std::size_t m = 0;
    for (const auto& b : blocks_) m = std::max(m, b.idx.size());
    return m;
}

SpMat HermitianBlocks::apply(const std::function<cplx(double)>& f) const {
    std::vector<Eigen::Triplet<cplx>> trip;
    std::size_t nnz = 0;
    for (const auto& b : blocks_) nnz += b.idx.size() * b.idx.size();
    trip.reserve(nnz);
    for (const auto& b : blocks_) {
        Eigen::VectorXcd fv(b.evals.size());
        for (Eigen::Index j = 0; j < b.evals.size(); ++j) fv[j] = f(b.evals[j]);
        Eigen::MatrixXcd m = b.evecs * fv.asDiagonal() * b.evecs.adjoint();
        for (std::size_t r = 0; r < b.idx.size(); ++r)
            for (std::size_t c = 0; c < b.idx.size(); ++c)
                if (m(r, c) != cplx(0.0)) trip.emplace_back(b.idx[r], b.idx[c], m(r, c));
    }
    SpMat out(n_, n_);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Vec HermitianBlocks::apply(const std::function<cplx(double)>& f, const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("dimension mismatch");
    Vec out = Vec::Zero(n_);
    for (const auto& b : blocks_) {
        Eigen::VectorXcd loc(b.idx.size());
        bool any = false;
        for (std::size_t j = 0; j < b.idx.size(); ++j) {
            loc[j] = v[b.idx[j]];
            any = any || loc[j] != cplx(0.0);
        }
        if (!any) continue;
        Eigen::VectorXcd c = b.evecs.adjoint() * loc;
        for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= f(b.evals[j]);
        loc = b.evecs * c;
        for (std::size_t j = 0; j < b.idx.size(); ++j) out[b.idx[j]] = loc[j];
    }
    return out;
}

SpMat HermitianBlocks::unitary(double t) const {
    return apply([t](double e) { return std::exp(cplx(0.0, -e * t)); });
}

Vec HermitianBlocks::evolve(const Vec& v, double t) const {
    return apply([t](double e) { return std::exp(cplx(0.0, -e * t)); }, v);
}

}  // namespace wfx
