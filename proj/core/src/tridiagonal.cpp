#include "siqm/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "siqm/errors.hpp"

namespace siqm {

namespace {

constexpr double kUnderflowClamp = 1e-300;

bool all_finite(const TridiagonalMatrix& T) {
    for (double v : T.diag)
        if (!std::isfinite(v)) return false;
    for (double v : T.off)
        if (!std::isfinite(v)) return false;
    return true;
}

// Gershgorin bracket containing the full spectrum.
std::pair<double, double> spectral_bounds(const TridiagonalMatrix& T) {
    const int n = T.size();
    double lo = T.diag[0], hi = T.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(T.off[i - 1]);
        if (i < n - 1) r += std::fabs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    return {lo, hi};
}

// Solve (T - lambda I) x = b by the Thomas algorithm with clamped pivots;
// adequate for inverse iteration where near-singularity is the point.
std::vector<double> shifted_solve(const TridiagonalMatrix& T, double lambda,
                                  const std::vector<double>& b) {
    const int n = T.size();
    double scale = 0.0;
    for (double v : T.diag) scale = std::max(scale, std::fabs(v));
    for (double v : T.off) scale = std::max(scale, std::fabs(v));
    scale = std::max(scale, std::fabs(lambda));
    const double pivot_floor = 1e-14 * std::max(scale, 1.0);

    std::vector<double> cp(n, 0.0), xp(n, 0.0);
    double denom = T.diag[0] - lambda;
    if (std::fabs(denom) < pivot_floor) denom = denom < 0.0 ? -pivot_floor : pivot_floor;
    if (n > 1) cp[0] = T.off[0] / denom;
    xp[0] = b[0] / denom;
    for (int i = 1; i < n; ++i) {
        denom = (T.diag[i] - lambda) - T.off[i - 1] * cp[i - 1];
        if (std::fabs(denom) < pivot_floor) denom = denom < 0.0 ? -pivot_floor : pivot_floor;
        if (i < n - 1) cp[i] = T.off[i] / denom;
        xp[i] = (b[i] - T.off[i - 1] * xp[i - 1]) / denom;
    }
    std::vector<double> x(n);
    x[n - 1] = xp[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = xp[i] - cp[i] * x[i + 1];
    return x;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

std::vector<double> TridiagonalMatrix::apply(const std::vector<double>& x) const {
    const int n = size();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += off[i - 1] * x[i - 1];
        if (i < n - 1) acc += off[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

TridiagonalMatrix build_tridiagonal(const std::function<double(double)>& V, const Grid& grid) {
    const int n = grid.n_points;
    const double invh2 = 1.0 / (grid.spacing() * grid.spacing());
    TridiagonalMatrix T;
    T.diag.resize(n);
    T.off.assign(n - 1, -invh2);
    for (int i = 0; i < n; ++i) T.diag[i] = 2.0 * invh2 + V(grid.x(i));
    return T;
}

int sturm_count_below(const TridiagonalMatrix& T, double lambda) {
    const int n = T.size();
    int count = 0;
    double d = T.diag[0] - lambda;
    if (std::fabs(d) < kUnderflowClamp) d = -kUnderflowClamp;
    if (d < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        d = (T.diag[i] - lambda) - T.off[i - 1] * T.off[i - 1] / d;
        if (std::fabs(d) < kUnderflowClamp) d = -kUnderflowClamp;
        if (d < 0.0) ++count;
    }
    return count;
}

Spectrum lowest_eigenvalues(const TridiagonalMatrix& T, int k, double tol) {
    const int n = T.size();
    if (k < 0 || k > n) throw std::invalid_argument("requested eigenvalue count out of range");
    if (tol <= 0.0) throw std::invalid_argument("bisection tolerance must be positive");
    if (!all_finite(T))
        throw ToleranceUnreachable("matrix has non-finite entries; bisection cannot bracket");

    Spectrum spec;
    spec.provenance = Provenance::oracle;
    auto [glo, ghi] = spectral_bounds(T);
    for (int idx = 1; idx <= k; ++idx) {
        double lo = glo, hi = ghi;
        int iter = 0;
        while (hi - lo > tol) {
            if (++iter > 20000)
                throw ToleranceUnreachable("bisection stalled before reaching tolerance");
            double mid = 0.5 * (lo + hi);
            if (sturm_count_below(T, mid) >= idx)
                hi = mid;
            else
                lo = mid;
        }
        spec.entries.push_back({idx, 0.5 * (lo + hi)});
    }
    return spec;
}

Wavefunction eigenvector(const TridiagonalMatrix& T, double lambda, const Grid& grid) {
    const int n = T.size();
    if (n != grid.n_points) throw std::invalid_argument("matrix size does not match grid");

    std::mt19937 gen(0x5eedu);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    double nv = norm2(v);
    for (double& x : v) x /= nv;

    constexpr int kMaxIter = 5;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        std::vector<double> w = shifted_solve(T, lambda, v);
        double nw = norm2(w);
        if (!std::isfinite(nw) || nw == 0.0)
            throw NoConvergence("inverse iteration produced a degenerate vector");
        for (double& x : w) x /= nw;
        v = std::move(w);

        // Rayleigh-quotient residual; the bisection shift is only tol-accurate.
        std::vector<double> tv = T.apply(v);
        double rayleigh = 0.0;
        for (int i = 0; i < n; ++i) rayleigh += v[i] * tv[i];
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = tv[i] - rayleigh * v[i];
            res += r * r;
        }
        if (std::sqrt(res) <= 1e-8) {
            Wavefunction psi(std::move(v), grid);
            psi.normalize();
            psi.apply_sign_convention();
            return psi;
        }
        lambda = rayleigh;
    }
    std::ostringstream msg;
    msg << "inverse iteration did not reach residual 1e-8 in " << kMaxIter << " sweeps";
    throw NoConvergence(msg.str());
}

SpectrumComparison compare_spectra(const Spectrum& exact, const Spectrum& oracle, double tol) {
    if (exact.entries.empty() || oracle.entries.empty())
        throw std::invalid_argument("compare_spectra requires nonempty spectra");
    SpectrumComparison cmp;
    std::size_t m = std::min(exact.entries.size(), oracle.entries.size());
    for (std::size_t i = 0; i < m; ++i) {
        double d = std::fabs(exact.entries[i].energy - oracle.entries[i].energy);
        cmp.abs_diffs.push_back(d);
        cmp.max_abs_diff = std::max(cmp.max_abs_diff, d);
    }
    cmp.pass = cmp.max_abs_diff <= tol;
    return cmp;
}

} // namespace siqm
