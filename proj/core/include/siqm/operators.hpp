#pragma once

#include <span>

#include "siqm/banded.hpp"
#include "siqm/family.hpp"
#include "siqm/grid.hpp"

namespace siqm {

enum class Ordering { AdaggerA, AAdagger };
enum class Mode { product, analytic };

/// Banded matrix realizing an operator on a grid.
struct DiscreteOperator {
    BandedMatrix matrix;
    Grid grid;
};

/// Rows this close to either wall are excluded from interior residual norms.
inline constexpr int kInteriorMargin = 2;

/// A(g) = D + diag(W(x_i; g)) with D the antisymmetric central-difference
/// first derivative and Dirichlet rows (out-of-range neighbors read as zero).
/// The discrete adjoint of the result is exactly its transpose.
DiscreteOperator build_A(const SuperpotentialFamily& family, const ParamValue& g,
                         const Grid& grid);

/// Exact matrix transpose; an involution, bitwise.
DiscreteOperator adjoint(const DiscreteOperator& op);

/// Partner Hamiltonian.  `product` mode forms the literal matrix product
/// (A^T A or A A^T); `analytic` mode forms the 3-point Laplacian plus
/// diag(W^2 -+ W').  Both are exactly symmetric; they agree on smooth test
/// vectors to O(h^2) in the interior.
DiscreteOperator hamiltonian(const SuperpotentialFamily& family, const ParamValue& g,
                             const Grid& grid, Ordering ordering, Mode mode);

/// W(x;g)^2 -+ W'(x;g) sampled at x.
double partner_potential(const SuperpotentialFamily& family, const ParamValue& g, double x,
                         Ordering ordering);

double plain_dot(std::span<const double> a, std::span<const double> b);

/// Sup norm over entries at least `margin` rows away from both walls.
double interior_sup_norm(std::span<const double> v, int margin = kInteriorMargin);

} // namespace siqm
