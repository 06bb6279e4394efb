#include "siqm/operators.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace siqm {

DiscreteOperator build_A(const SuperpotentialFamily& family, const ParamValue& g,
                         const Grid& grid) {
    family.check_arity(g);
    const int n = grid.n_points;
    const double inv2h = 1.0 / (2.0 * grid.spacing());
    BandedMatrix m(n, 1);
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) m.set(i, i + 1, inv2h);
        if (i - 1 >= 0) m.set(i, i - 1, -inv2h);
        m.set(i, i, family.W(grid.x(i), g));
    }
    return DiscreteOperator{std::move(m), grid};
}

DiscreteOperator adjoint(const DiscreteOperator& op) {
    return DiscreteOperator{op.matrix.transpose(), op.grid};
}

double partner_potential(const SuperpotentialFamily& family, const ParamValue& g, double x,
                         Ordering ordering) {
    double w = family.W(x, g);
    double dw = family.dW_dx(x, g);
    return ordering == Ordering::AdaggerA ? w * w - dw : w * w + dw;
}

DiscreteOperator hamiltonian(const SuperpotentialFamily& family, const ParamValue& g,
                             const Grid& grid, Ordering ordering, Mode mode) {
    family.check_arity(g);
    if (mode == Mode::product) {
        DiscreteOperator a = build_A(family, g, grid);
        BandedMatrix at = a.matrix.transpose();
        BandedMatrix h = ordering == Ordering::AdaggerA ? multiply(at, a.matrix)
                                                        : multiply(a.matrix, at);
        assert(h.is_symmetric());
        return DiscreteOperator{std::move(h), grid};
    }
    const int n = grid.n_points;
    const double invh2 = 1.0 / (grid.spacing() * grid.spacing());
    BandedMatrix m(n, 1);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, 2.0 * invh2 + partner_potential(family, g, grid.x(i), ordering));
        if (i + 1 < n) m.set(i, i + 1, -invh2);
        if (i - 1 >= 0) m.set(i, i - 1, -invh2);
    }
    return DiscreteOperator{std::move(m), grid};
}

double plain_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double interior_sup_norm(std::span<const double> v, int margin) {
    double m = 0.0;
    const int n = static_cast<int>(v.size());
    for (int i = margin; i < n - margin; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
}

} // namespace siqm
