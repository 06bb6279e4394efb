#include "siqm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "siqm/operators.hpp"

namespace siqm {

namespace {

// Wall value above this fraction of the peak marks a profile that does not
// decay inside the box.
constexpr double kWallDecayTol = 1e-4;

} // namespace

ParameterOrbit orbit(const SuperpotentialFamily& family, const ParamValue& g1, int K) {
    if (K < 1) throw std::invalid_argument("orbit length must be at least 1");
    family.check_arity(g1);
    ParameterOrbit orb;
    orb.points.reserve(K);
    orb.partial_sums.reserve(K);
    ParamValue g = g1;
    for (int j = 0; j < K; ++j) {
        if (!family.admissible(g)) {
            std::ostringstream msg;
            msg << family.name << ": orbit point " << (j + 1) << " left the admissible set";
            throw ParameterDomainExit(msg.str());
        }
        orb.points.push_back(g);
        orb.partial_sums.push_back(j == 0 ? 0.0 : orb.partial_sums[j - 1] + family.c(g));
        if (j + 1 < K) g = family.f(g);
    }
    return orb;
}

Spectrum exact_energies(const SuperpotentialFamily& family, const ParamValue& g1,
                        long n_levels) {
    if (n_levels < 1) throw std::invalid_argument("n_levels must be at least 1");
    Spectrum spec;
    spec.provenance = Provenance::exact;
    std::optional<long> bc = family.bound_state_count(g1);
    long levels = n_levels;
    if (bc && *bc < n_levels) {
        levels = *bc;
        spec.truncated = true;
    }
    if (levels < 1) {
        spec.truncated = true;
        return spec;
    }
    ParameterOrbit orb = orbit(family, g1, static_cast<int>(levels));
    for (long n = 1; n <= levels; ++n)
        spec.entries.push_back({n, orb.partial_sums[n - 1]});
    return spec;
}

Wavefunction ground_state(const SuperpotentialFamily& family, const ParamValue& g,
                          const Grid& grid) {
    family.check_arity(g);
    const int n = grid.n_points;
    std::vector<double> phi(n);  // int_0^x W dt, up to an additive constant
    if (family.antiderivative_W) {
        for (int i = 0; i < n; ++i) phi[i] = family.antiderivative_W(grid.x(i), g);
    } else {
        // Cumulative trapezoid from the node nearest x = 0, outward.
        const int i0 = grid.index_nearest(0.0);
        const double h = grid.spacing();
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) w[i] = family.W(grid.x(i), g);
        phi[i0] = 0.0;
        for (int i = i0 + 1; i < n; ++i) phi[i] = phi[i - 1] + 0.5 * h * (w[i - 1] + w[i]);
        for (int i = i0 - 1; i >= 0; --i) phi[i] = phi[i + 1] - 0.5 * h * (w[i] + w[i + 1]);
    }
    double phi_min = *std::min_element(phi.begin(), phi.end());
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::exp(-(phi[i] - phi_min));

    Wavefunction psi = Wavefunction::from_samples(std::move(v), grid);
    double peak = psi.max_abs();
    if (std::fabs(psi.values.front()) > kWallDecayTol * peak ||
        std::fabs(psi.values.back()) > kWallDecayTol * peak) {
        std::ostringstream msg;
        msg << family.name << ": ground-state profile does not decay at the box walls";
        throw NonNormalizable(msg.str());
    }
    return psi;
}

Wavefunction excited_state(const SuperpotentialFamily& family, const ParamValue& g1,
                           long n, const Grid& grid) {
    if (n < 1) throw LevelOutOfRange("level index must be at least 1");
    std::optional<long> bc = family.bound_state_count(g1);
    if (bc && n > *bc) {
        std::ostringstream msg;
        msg << family.name << ": level " << n << " exceeds the bound-state count " << *bc;
        throw LevelOutOfRange(msg.str());
    }
    if (n == 1) return ground_state(family, g1, grid);
    ParameterOrbit orb = orbit(family, g1, static_cast<int>(n));
    Wavefunction psi = ground_state(family, orb.points[n - 1], grid);
    for (long j = n - 2; j >= 0; --j) {
        DiscreteOperator raise = adjoint(build_A(family, orb.points[j], grid));
        psi.values = raise.matrix.apply(psi.values);
    }
    psi.normalize();
    psi.apply_sign_convention();
    return psi;
}

} // namespace siqm
