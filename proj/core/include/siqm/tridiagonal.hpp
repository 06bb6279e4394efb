#pragma once

#include <functional>
#include <vector>

#include "siqm/grid.hpp"
#include "siqm/spectrum.hpp"
#include "siqm/wavefunction.hpp"

namespace siqm {

/// Symmetric tridiagonal matrix: diagonal of length n, off-diagonal n-1.
struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
    std::vector<double> apply(const std::vector<double>& x) const;
};

/// Standard 3-point discretization of -d^2/dx^2 + V(x) with Dirichlet walls:
/// diag_i = 2/h^2 + V(x_i), off-diagonal -1/h^2.
TridiagonalMatrix build_tridiagonal(const std::function<double(double)>& V, const Grid& grid);

/// Eigenvalue count strictly below lambda, by Sturm sequence.
int sturm_count_below(const TridiagonalMatrix& T, double lambda);

/// k smallest eigenvalues by Sturm-count bisection, each bracketed to width
/// <= tol.  Deterministic.  Throws ToleranceUnreachable on non-finite input.
Spectrum lowest_eigenvalues(const TridiagonalMatrix& T, int k, double tol = 1e-6);

/// Eigenvector by inverse iteration at shift lambda (lambda within bisection
/// tolerance of a true eigenvalue).  Throws NoConvergence past the iteration cap.
Wavefunction eigenvector(const TridiagonalMatrix& T, double lambda, const Grid& grid);

struct SpectrumComparison {
    std::vector<double> abs_diffs;   // per compared level
    double max_abs_diff = 0.0;
    bool pass = false;
};

/// Per-level absolute differences over the common levels of two spectra.
SpectrumComparison compare_spectra(const Spectrum& exact, const Spectrum& oracle, double tol);

} // namespace siqm
