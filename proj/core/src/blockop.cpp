#include "siqm/blockop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "siqm/operators.hpp"

namespace siqm {

BlockVector BlockVector::zeros(int n_sectors, int n) {
    BlockVector v;
    v.sectors.assign(n_sectors, std::vector<double>(n, 0.0));
    return v;
}

BlockOperator::BlockOperator(int n_blocks, int n) : nb_(n_blocks), n_(n) {
    if (n_blocks <= 0 || n <= 0) throw std::invalid_argument("invalid block operator shape");
    cells_.resize(static_cast<std::size_t>(nb_) * nb_);
}

void BlockOperator::set_block(int i, int j, BandedMatrix m) {
    if (m.size() != n_) throw std::invalid_argument("block size mismatch");
    cells_[idx(i, j)] = std::move(m);
}

void BlockOperator::clear_block(int i, int j) { cells_[idx(i, j)].reset(); }

const std::optional<BandedMatrix>& BlockOperator::block(int i, int j) const {
    return cells_[idx(i, j)];
}

BlockOperator BlockOperator::adjointed() const {
    BlockOperator out(nb_, n_);
    for (int i = 0; i < nb_; ++i)
        for (int j = 0; j < nb_; ++j)
            if (cells_[idx(j, i)]) out.set_block(i, j, cells_[idx(j, i)]->transpose());
    return out;
}

BlockVector BlockOperator::apply(const BlockVector& x) const {
    if (x.n_sectors() != nb_) throw std::invalid_argument("block vector shape mismatch");
    BlockVector y = BlockVector::zeros(nb_, n_);
    for (int i = 0; i < nb_; ++i)
        for (int j = 0; j < nb_; ++j) {
            const auto& cell = cells_[idx(i, j)];
            if (!cell) continue;
            std::vector<double> t = cell->apply(x.sectors[j]);
            for (int r = 0; r < n_; ++r) y.sectors[i][r] += t[r];
        }
    return y;
}

double BlockOperator::max_abs() const {
    double m = 0.0;
    for (const auto& cell : cells_)
        if (cell) m = std::max(m, cell->max_abs());
    return m;
}

BlockOperator multiply(const BlockOperator& a, const BlockOperator& b) {
    if (a.nb_ != b.nb_ || a.n_ != b.n_)
        throw std::invalid_argument("block operator shape mismatch in multiply");
    BlockOperator c(a.nb_, a.n_);
    for (int i = 0; i < a.nb_; ++i)
        for (int j = 0; j < a.nb_; ++j) {
            std::optional<BandedMatrix> acc;
            for (int k = 0; k < a.nb_; ++k) {
                const auto& ab = a.cells_[a.idx(i, k)];
                const auto& bb = b.cells_[b.idx(k, j)];
                if (!ab || !bb) continue;
                BandedMatrix prod = multiply(*ab, *bb);
                acc = acc ? add(*acc, prod) : std::move(prod);
            }
            if (acc) c.set_block(i, j, std::move(*acc));
        }
    return c;
}

BlockOperator add(const BlockOperator& a, const BlockOperator& b) {
    if (a.nb_ != b.nb_ || a.n_ != b.n_)
        throw std::invalid_argument("block operator shape mismatch in add");
    BlockOperator c(a.nb_, a.n_);
    for (int i = 0; i < a.nb_; ++i)
        for (int j = 0; j < a.nb_; ++j) {
            const auto& ab = a.cells_[a.idx(i, j)];
            const auto& bb = b.cells_[b.idx(i, j)];
            if (ab && bb)
                c.set_block(i, j, add(*ab, *bb));
            else if (ab)
                c.set_block(i, j, *ab);
            else if (bb)
                c.set_block(i, j, *bb);
        }
    return c;
}

BlockOperator subtract(const BlockOperator& a, const BlockOperator& b) {
    if (a.nb_ != b.nb_ || a.n_ != b.n_)
        throw std::invalid_argument("block operator shape mismatch in subtract");
    BlockOperator c(a.nb_, a.n_);
    for (int i = 0; i < a.nb_; ++i)
        for (int j = 0; j < a.nb_; ++j) {
            const auto& ab = a.cells_[a.idx(i, j)];
            const auto& bb = b.cells_[b.idx(i, j)];
            if (ab && bb)
                c.set_block(i, j, subtract(*ab, *bb));
            else if (ab)
                c.set_block(i, j, *ab);
            else if (bb) {
                BandedMatrix neg = *bb;
                neg *= -1.0;
                c.set_block(i, j, std::move(neg));
            }
        }
    return c;
}

BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b) {
    return add(multiply(a, b), multiply(b, a));
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
    return subtract(multiply(a, b), multiply(b, a));
}

double relative_residual(const BlockOperator& x, const BlockOperator& y) {
    double scale = std::max(x.max_abs(), y.max_abs());
    if (scale == 0.0) return 0.0;
    return subtract(x, y).max_abs() / scale;
}

double block_interior_sup(const BlockVector& v, int margin) {
    double m = 0.0;
    for (const auto& s : v.sectors) m = std::max(m, interior_sup_norm(s, margin));
    return m;
}

} // namespace siqm
