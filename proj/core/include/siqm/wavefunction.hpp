#pragma once

#include <vector>

#include "siqm/grid.hpp"

namespace siqm {

/// Real state vector on grid nodes.  Normalization convention
/// sum(psi_i^2) * h = 1; sign convention: the first component exceeding
/// 1e-8 in absolute value (scanning from x_min) is positive.
struct Wavefunction {
    std::vector<double> values;
    Grid grid;

    Wavefunction(std::vector<double> v, const Grid& g);

    /// Normalizes and applies the sign convention.
    static Wavefunction from_samples(std::vector<double> v, const Grid& g);

    double norm() const;               // sqrt(h * sum v^2)
    void normalize();
    void apply_sign_convention();

    /// Grid-weighted inner product h * sum(u_i v_i).
    double overlap(const Wavefunction& other) const;

    /// Interior sign changes, ignoring entries below rel_floor * max|psi|.
    /// Boundary-adjacent rows carry ladder/Dirichlet artifacts and are skipped.
    int node_count(double rel_floor = 1e-9, int margin = 2) const;

    double max_abs() const;
};

} // namespace siqm
