#pragma once

#include <vector>

#include "siqm/family.hpp"
#include "siqm/grid.hpp"
#include "siqm/wavefunction.hpp"

namespace siqm {

/// The sequence g_1, g_2 = f(g_1), ... with accumulated energy partial sums.
/// By convention the sum starts at the second point, i.e. c(g_1) contributes
/// nothing: partial_sums[0] = 0 and partial_sums[k] = sum_{j=1..k} c(points[j]).
struct ParameterOrbit {
    std::vector<ParamValue> points;
    std::vector<double> partial_sums;
};

enum class Provenance { exact, oracle };

struct SpectrumEntry {
    long level;     // 1-based, ground state is level 1
    double energy;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    Provenance provenance = Provenance::exact;
    bool truncated = false;   // requested more levels than the family binds
};

/// K orbit points starting at g1.  Throws ParameterDomainExit if any point
/// leaves the family's admissible set.
ParameterOrbit orbit(const SuperpotentialFamily& family, const ParamValue& g1, int K);

/// Level energies from the telescoping remainder sums.  Requests beyond the
/// bound-state count are truncated and flagged, not rejected.
Spectrum exact_energies(const SuperpotentialFamily& family, const ParamValue& g1,
                        long n_levels);

/// Nodeless state proportional to exp(-int_0^x W dt), from the analytic
/// antiderivative when the family supplies one, else by cumulative
/// trapezoidal quadrature.  Throws NonNormalizable when the profile fails
/// to decay at the walls.
Wavefunction ground_state(const SuperpotentialFamily& family, const ParamValue& g,
                          const Grid& grid);

/// Level-n state built by applying the discrete adjoint ladder factors
/// right-to-left to the ground state further down the orbit.
Wavefunction excited_state(const SuperpotentialFamily& family, const ParamValue& g1,
                           long n, const Grid& grid);

} // namespace siqm
