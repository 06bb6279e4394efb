#pragma once

#include <optional>
#include <vector>

#include "siqm/banded.hpp"

namespace siqm {

/// Vector partitioned into equal-length sector components.
struct BlockVector {
    std::vector<std::vector<double>> sectors;

    int n_sectors() const { return static_cast<int>(sectors.size()); }
    static BlockVector zeros(int n_sectors, int n);
};

/// Square block matrix whose cells are banded matrices; absent cells are zero.
/// All blocks share one size n.  Used for the multi-sector operators
/// (supercharges, grading, shift operator, block Hamiltonians).
class BlockOperator {
public:
    BlockOperator(int n_blocks, int n);

    int n_blocks() const { return nb_; }
    int block_size() const { return n_; }

    void set_block(int i, int j, BandedMatrix m);
    void clear_block(int i, int j);
    const std::optional<BandedMatrix>& block(int i, int j) const;

    /// Blockwise transpose with cell transposition; exact.
    BlockOperator adjointed() const;

    BlockVector apply(const BlockVector& x) const;

    double max_abs() const;

    friend BlockOperator multiply(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator add(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator subtract(const BlockOperator& a, const BlockOperator& b);

private:
    int nb_;
    int n_;
    std::vector<std::optional<BandedMatrix>> cells_;

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * nb_ + j; }
};

BlockOperator multiply(const BlockOperator& a, const BlockOperator& b);
BlockOperator add(const BlockOperator& a, const BlockOperator& b);
BlockOperator subtract(const BlockOperator& a, const BlockOperator& b);

BlockOperator anticommutator(const BlockOperator& a, const BlockOperator& b);
BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);

/// max_abs(x - y) / max(max_abs(x), max_abs(y)), guarded against zero scale.
double relative_residual(const BlockOperator& x, const BlockOperator& y);

/// Sup over sectors of the interior sup norm (boundary-adjacent rows excluded).
double block_interior_sup(const BlockVector& v, int margin = 2);

} // namespace siqm
