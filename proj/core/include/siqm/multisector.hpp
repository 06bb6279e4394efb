#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "siqm/blockop.hpp"
#include "siqm/family.hpp"
#include "siqm/grid.hpp"
#include "siqm/operators.hpp"
#include "siqm/spectrum.hpp"
#include "siqm/tridiagonal.hpp"
#include "siqm/wavefunction.hpp"

namespace siqm {

struct ModelOptions {
    double eta1 = 0.0;
    /// Additive offset applied to 2*eta_j^2 for every partnership j >= 2,
    /// decoupling the eta ladder to reproduce the misaligned-spectrum pattern.
    double broken_eta_offset = 0.0;
};

/// 2N-sector model with centrally extended supersymmetry and shift operator.
///
/// Sector Hamiltonians follow the recursion closure: H_j = A^T(g_j) A(g_j) + b_j
/// for j < 2N and H_2N = A(g_{2N-1}) A^T(g_{2N-1}) + b_{2N-1}, with the
/// Bogomol'nyi constants b_1 = 2 eta_1^2, b_{j+1} = b_j + kappa(g_j).
/// The orbit stores the 2N-1 parameters that appear in operators.
struct MultiSectorModel {
    SuperpotentialFamily family;
    ParamValue g1;
    int partnerships = 1;   // N; the model has 2N sectors
    Grid grid;
    ModelOptions options;

    ParameterOrbit orbit;                          // g_1 .. g_{2N-1}
    std::vector<double> b;                         // b_1 .. b_{2N-1}
    std::vector<double> eta;                       // eta_1 .. eta_N
    std::vector<DiscreteOperator> A_ops;           // A(g_1) .. A(g_{2N-1})
    std::vector<BandedMatrix> sector_hamiltonians; // 2N blocks

    BlockOperator H;              // block-diagonal of sector_hamiltonians
    BlockOperator Q, Qdagger;     // supercharges
    BlockOperator Qtilde, Qtilde_dagger;
    BlockOperator Gamma;          // diag(+1, -1, +1, -1, ...)
    BlockOperator S;              // conserved shift operator (sub-diagonal A blocks)
    BlockOperator Z;              // central charge, 2 eta_j^2 per partnership
    BlockOperator B;              // diag(b_1, ..., b_{2N-1}, H_2N)

    int n_sectors() const { return 2 * partnerships; }

    /// Potential of sector j (1-based), constant shift included.
    std::function<double(double)> sector_potential(int j) const;

    /// Bound states of sector j; empty optional means unbounded.
    std::optional<long> sector_bound_count(int j) const;
};

MultiSectorModel build_model(const SuperpotentialFamily& family, const ParamValue& g1,
                             int partnerships, const Grid& grid,
                             const ModelOptions& options = {});

struct BpsState {
    int sector;        // 1-based, in 1 .. 2N-1
    Wavefunction state;
    double energy;     // b_sector
};

/// Bogomol'nyi states: the ground state of each of the first 2N-1 sectors,
/// annihilated by S in the continuum, with energy b_j.
std::vector<BpsState> bps_states(const MultiSectorModel& model);

struct ChainLink {
    int sector;
    Wavefunction state;
};

/// Repeatedly applies the adjoint shift operator from the level-n state of
/// sector j, normalizing each step, until the pre-normalization norm falls
/// to 1e-6.  BPS roots give shortened chains.
std::vector<ChainLink> multiplet_chain(const MultiSectorModel& model, int sector, long level);

struct SectorLevels {
    int sector;
    double b_floor;                 // Bogomol'nyi constant of the sector
    std::vector<double> energies;   // oracle bound levels, ascending
};

struct AlignmentFlag {
    int lower, upper;          // adjacent sector pair (lower, lower+1)
    bool same_partnership;
    int n_compared;
    int n_matched;
    bool aligned;              // all compared levels matched (vacuously true)
};

struct DegeneracyTable {
    std::vector<SectorLevels> sectors;
    std::vector<AlignmentFlag> alignment;
    bool all_aligned() const;
};

/// Oracle level lists per sector plus cross-sector alignment flags:
/// level n+1 of sector j against level n of sector j+1, within tol.
DegeneracyTable degeneracy_table(const MultiSectorModel& model, int levels_per_sector,
                                 double tol = 1e-3);

} // namespace siqm
