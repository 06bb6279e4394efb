#pragma once

#include <cmath>
#include <stdexcept>

namespace siqm {

/// Uniform 1D grid on [x_min, x_max] with hard-wall (Dirichlet) boundaries.
/// Node i sits at x_min + i*h with h = (x_max - x_min)/(n_points - 1).
struct Grid {
    double x_min;
    double x_max;
    int n_points;

    Grid(double xmin, double xmax, int n) : x_min(xmin), x_max(xmax), n_points(n) {
        if (n < 3) throw std::invalid_argument("grid needs at least 3 points");
        if (!(xmax > xmin)) throw std::invalid_argument("grid requires x_max > x_min");
        if (!std::isfinite(xmin) || !std::isfinite(xmax))
            throw std::invalid_argument("grid endpoints must be finite");
    }

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double x(int i) const { return x_min + i * spacing(); }
    int size() const { return n_points; }

    /// Same box with the spacing exactly halved (nodes of this grid are kept).
    Grid refined() const { return Grid(x_min, x_max, 2 * n_points - 1); }

    int index_nearest(double x0) const {
        double t = (x0 - x_min) / spacing();
        int i = static_cast<int>(std::lround(t));
        if (i < 0) i = 0;
        if (i >= n_points) i = n_points - 1;
        return i;
    }

    bool operator==(const Grid& o) const {
        return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
    }
};

} // namespace siqm
