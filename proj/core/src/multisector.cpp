#include "siqm/multisector.hpp"

#include <cmath>
#include <sstream>

namespace siqm {

namespace {

constexpr double kChainTerminationNorm = 1e-6;

} // namespace

std::function<double(double)> MultiSectorModel::sector_potential(int j) const {
    const int last = n_sectors();
    if (j < 1 || j > last) throw std::invalid_argument("sector index out of range");
    if (j < last) {
        ParamValue g = orbit.points[j - 1];
        double shift = b[j - 1];
        const SuperpotentialFamily& fam = family;
        return [&fam, g, shift](double x) {
            return partner_potential(fam, g, x, Ordering::AdaggerA) + shift;
        };
    }
    ParamValue g = orbit.points[last - 2];
    double shift = b[last - 2];
    const SuperpotentialFamily& fam = family;
    return [&fam, g, shift](double x) {
        return partner_potential(fam, g, x, Ordering::AAdagger) + shift;
    };
}

std::optional<long> MultiSectorModel::sector_bound_count(int j) const {
    const int last = n_sectors();
    if (j < 1 || j > last) throw std::invalid_argument("sector index out of range");
    if (j < last) return family.bound_state_count(orbit.points[j - 1]);
    // The closing sector is the partner of sector 2N-1: its bound spectrum is
    // that of the next orbit point, empty when that point is inadmissible.
    ParamValue g_next = family.f(orbit.points[last - 2]);
    if (!family.admissible(g_next)) return 0;
    return family.bound_state_count(g_next);
}

MultiSectorModel build_model(const SuperpotentialFamily& family, const ParamValue& g1,
                             int partnerships, const Grid& grid, const ModelOptions& options) {
    if (partnerships < 1) throw std::invalid_argument("need at least one partnership");
    if (!std::isfinite(options.eta1)) throw std::invalid_argument("eta1 must be finite");
    const int sectors = 2 * partnerships;

    MultiSectorModel m{family, g1, partnerships, grid, options,
                       {}, {}, {}, {}, {},
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points),
                       BlockOperator(sectors, grid.n_points)};

    m.orbit = orbit(family, g1, sectors - 1);

    // Bogomol'nyi ladder b_{j+1} = b_j + kappa(g_j); a nonzero broken offset
    // bumps each partnership boundary, decoupling the eta values.
    m.b.resize(sectors - 1);
    m.b[0] = 2.0 * options.eta1 * options.eta1;
    for (int j = 1; j < sectors - 1; ++j) {
        m.b[j] = m.b[j - 1] + kappa(family, m.orbit.points[j - 1]);
        if (options.broken_eta_offset != 0.0 && j >= 2 && j % 2 == 0)
            m.b[j] += options.broken_eta_offset;
    }

    m.eta.resize(partnerships);
    m.eta[0] = options.eta1;
    for (int p = 2; p <= partnerships; ++p) {
        double b_odd = m.b[2 * p - 2];
        if (b_odd < 0.0) {
            std::ostringstream msg;
            msg << "partnership " << p << " has 2*eta^2 = " << b_odd
                << " < 0; no real eta exists";
            throw ParameterDomainExit(msg.str());
        }
        m.eta[p - 1] = std::sqrt(0.5 * b_odd);
    }

    m.A_ops.reserve(sectors - 1);
    for (int j = 0; j < sectors - 1; ++j)
        m.A_ops.push_back(build_A(family, m.orbit.points[j], grid));

    // Sector Hamiltonians in product form; the final sector closes with the
    // reversed ordering at the last orbit point.
    m.sector_hamiltonians.reserve(sectors);
    for (int j = 0; j < sectors - 1; ++j) {
        BandedMatrix h = multiply(m.A_ops[j].matrix.transpose(), m.A_ops[j].matrix);
        h.add_scaled_identity(m.b[j]);
        m.sector_hamiltonians.push_back(std::move(h));
    }
    {
        const BandedMatrix& a = m.A_ops[sectors - 2].matrix;
        BandedMatrix h = multiply(a, a.transpose());
        h.add_scaled_identity(m.b[sectors - 2]);
        m.sector_hamiltonians.push_back(std::move(h));
    }

    const int n = grid.n_points;
    for (int s = 0; s < sectors; ++s) m.H.set_block(s, s, m.sector_hamiltonians[s]);

    for (int p = 0; p < partnerships; ++p) {
        const int o = 2 * p;      // odd sector of the partnership (0-based)
        const double eta = m.eta[p];
        m.Q.set_block(o, o, BandedMatrix::identity(n, -eta));
        m.Q.set_block(o + 1, o, m.A_ops[o].matrix);
        m.Q.set_block(o + 1, o + 1, BandedMatrix::identity(n, eta));
        m.Qtilde.set_block(o + 1, o, m.A_ops[o].matrix);
        m.Gamma.set_block(o, o, BandedMatrix::identity(n, 1.0));
        m.Gamma.set_block(o + 1, o + 1, BandedMatrix::identity(n, -1.0));
        double z = m.b[o];   // 2 eta_p^2
        m.Z.set_block(o, o, BandedMatrix::identity(n, z));
        m.Z.set_block(o + 1, o + 1, BandedMatrix::identity(n, z));
    }
    m.Qdagger = m.Q.adjointed();
    m.Qtilde_dagger = m.Qtilde.adjointed();

    for (int j = 0; j < sectors - 1; ++j) m.S.set_block(j + 1, j, m.A_ops[j].matrix);

    for (int j = 0; j < sectors - 1; ++j)
        m.B.set_block(j, j, BandedMatrix::identity(n, m.b[j]));
    m.B.set_block(sectors - 1, sectors - 1, m.sector_hamiltonians[sectors - 1]);

    return m;
}

std::vector<BpsState> bps_states(const MultiSectorModel& model) {
    std::vector<BpsState> states;
    const int sectors = model.n_sectors();
    states.reserve(sectors - 1);
    for (int j = 1; j <= sectors - 1; ++j) {
        Wavefunction psi = ground_state(model.family, model.orbit.points[j - 1], model.grid);
        states.push_back({j, std::move(psi), model.b[j - 1]});
    }
    return states;
}

std::vector<ChainLink> multiplet_chain(const MultiSectorModel& model, int sector, long level) {
    const int sectors = model.n_sectors();
    if (sector < 1 || sector > sectors) throw std::invalid_argument("sector out of range");
    if (level < 1) throw LevelOutOfRange("level index must be at least 1");

    Wavefunction psi = [&]() {
        if (sector < sectors)
            return excited_state(model.family, model.orbit.points[sector - 1], level,
                                 model.grid);
        // Closing sector: take the oracle eigenvector; no ladder form exists here.
        TridiagonalMatrix T = build_tridiagonal(model.sector_potential(sector), model.grid);
        if (level > T.size()) throw LevelOutOfRange("level exceeds matrix dimension");
        Spectrum evs = lowest_eigenvalues(T, static_cast<int>(level));
        return eigenvector(T, evs.entries[level - 1].energy, model.grid);
    }();

    std::vector<ChainLink> chain;
    chain.push_back({sector, psi});
    int k = sector;
    while (k > 1) {
        // (S^T v)_{k-1} = A^T(g_{k-1}) v_k
        std::vector<double> w =
            model.A_ops[k - 2].matrix.transpose().apply(chain.back().state.values);
        Wavefunction next(std::move(w), model.grid);
        if (next.norm() <= kChainTerminationNorm) break;
        next.normalize();
        next.apply_sign_convention();
        chain.push_back({k - 1, std::move(next)});
        --k;
    }
    return chain;
}

bool DegeneracyTable::all_aligned() const {
    for (const auto& flag : alignment)
        if (!flag.aligned) return false;
    return true;
}

DegeneracyTable degeneracy_table(const MultiSectorModel& model, int levels_per_sector,
                                 double tol) {
    if (levels_per_sector < 0) throw std::invalid_argument("levels_per_sector must be >= 0");
    DegeneracyTable table;
    const int sectors = model.n_sectors();
    for (int j = 1; j <= sectors; ++j) {
        SectorLevels sl;
        sl.sector = j;
        sl.b_floor = model.b[std::min(j, sectors - 1) - 1];
        std::optional<long> bc = model.sector_bound_count(j);
        long k = bc ? std::min<long>(*bc, levels_per_sector) : levels_per_sector;
        if (k > 0) {
            TridiagonalMatrix T = build_tridiagonal(model.sector_potential(j), model.grid);
            Spectrum evs = lowest_eigenvalues(T, static_cast<int>(k));
            for (const auto& e : evs.entries) sl.energies.push_back(e.energy);
        }
        table.sectors.push_back(std::move(sl));
    }
    for (int j = 1; j < sectors; ++j) {
        AlignmentFlag flag;
        flag.lower = j;
        flag.upper = j + 1;
        flag.same_partnership = (j % 2 == 1);
        const auto& lo = table.sectors[j - 1].energies;
        const auto& hi = table.sectors[j].energies;
        int m = static_cast<int>(std::min(lo.size() > 0 ? lo.size() - 1 : 0, hi.size()));
        flag.n_compared = m;
        flag.n_matched = 0;
        for (int i = 0; i < m; ++i)
            if (std::fabs(lo[i + 1] - hi[i]) <= tol) ++flag.n_matched;
        flag.aligned = (flag.n_matched == flag.n_compared);
        table.alignment.push_back(flag);
    }
    return table;
}

} // namespace siqm
