#include "siqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace siqm {

namespace {

struct BumpSpec {
    double center;
    double width;
};

// Seeded Gaussian bump parameters, one bump per sector per test vector.
// Bumps stay well inside the box so wall rows cannot contaminate the
// convergence measurements.
std::vector<std::vector<BumpSpec>> bump_pool(int n_vectors, int n_sectors, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.4, 0.8);
    std::vector<std::vector<BumpSpec>> pool(n_vectors);
    for (auto& specs : pool) {
        specs.reserve(n_sectors);
        for (int s = 0; s < n_sectors; ++s) specs.push_back({center(gen), width(gen)});
    }
    return pool;
}

BlockVector sample_bumps(const std::vector<BumpSpec>& specs, const Grid& grid) {
    BlockVector v = BlockVector::zeros(static_cast<int>(specs.size()), grid.n_points);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const double c = specs[s].center;
        const double inv2w2 = 1.0 / (2.0 * specs[s].width * specs[s].width);
        for (int i = 0; i < grid.n_points; ++i) {
            double d = grid.x(i) - c;
            v.sectors[s][i] = std::exp(-d * d * inv2w2);
        }
    }
    return v;
}

// Block Hamiltonian in the form fixed by the supercharge construction:
// diag(A^T A + 2 eta^2, A A^T + 2 eta^2) per partnership.
BlockOperator partnership_hamiltonian(const MultiSectorModel& m) {
    const int n = m.grid.n_points;
    BlockOperator h(m.n_sectors(), n);
    for (int p = 0; p < m.partnerships; ++p) {
        const BandedMatrix& a = m.A_ops[2 * p].matrix;
        const double shift = 2.0 * m.eta[p] * m.eta[p];
        BandedMatrix odd = multiply(a.transpose(), a);
        odd.add_scaled_identity(shift);
        BandedMatrix even = multiply(a, a.transpose());
        even.add_scaled_identity(shift);
        h.set_block(2 * p, 2 * p, std::move(odd));
        h.set_block(2 * p + 1, 2 * p + 1, std::move(even));
    }
    return h;
}

// Ladder Hamiltonian with analytic-mode sector blocks (3-point Laplacian
// plus the partner potential diagonal).
BlockOperator analytic_ladder_hamiltonian(const MultiSectorModel& m) {
    const int sectors = m.n_sectors();
    BlockOperator h(sectors, m.grid.n_points);
    for (int j = 0; j < sectors - 1; ++j) {
        BandedMatrix blk = hamiltonian(m.family, m.orbit.points[j], m.grid,
                                       Ordering::AdaggerA, Mode::analytic)
                               .matrix;
        blk.add_scaled_identity(m.b[j]);
        h.set_block(j, j, std::move(blk));
    }
    BandedMatrix last = hamiltonian(m.family, m.orbit.points[sectors - 2], m.grid,
                                    Ordering::AAdagger, Mode::analytic)
                            .matrix;
    last.add_scaled_identity(m.b[sectors - 2]);
    h.set_block(sectors - 1, sectors - 1, std::move(last));
    return h;
}

IdentityResult structural(const std::string& name, double residual, double tol,
                          std::string note = {}) {
    IdentityResult r;
    r.name = name;
    r.classification = kStructural;
    r.residual = residual;
    r.pass = residual <= tol;
    r.note = std::move(note);
    return r;
}

// Residual magnitude below which an identity is taken to hold to rounding on
// this model (all contributing blocks cancel in exact arithmetic).
double rounding_floor(const BlockOperator& h) {
    return 1e4 * std::numeric_limits<double>::epsilon() * std::max(h.max_abs(), 1.0);
}

IdentityResult ratio_entry(const std::string& name, const std::vector<double>& coarse,
                           const std::vector<double>& fine, double floor_coarse,
                           double floor_fine, const VerifyOptions& opts) {
    IdentityResult r;
    r.name = name;
    r.classification = kDiscretizationLimited;
    r.residual = *std::max_element(coarse.begin(), coarse.end());
    r.residual_fine = *std::max_element(fine.begin(), fine.end());

    bool all_exact = true;
    bool ok = true;
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = 0.0;
    for (std::size_t t = 0; t < coarse.size(); ++t) {
        if (coarse[t] <= floor_coarse && fine[t] <= floor_fine) continue;
        all_exact = false;
        if (fine[t] <= floor_fine) {
            ok = false;   // residual failed to survive refinement consistently
            continue;
        }
        double q = coarse[t] / fine[t];
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
        if (q < opts.ratio_lo || q > opts.ratio_hi) ok = false;
    }
    if (all_exact) {
        r.pass = true;
        r.note = "vanishes to rounding on this model";
        return r;
    }
    if (qmax > 0.0) {
        r.ratio_min = qmin;
        r.ratio_max = qmax;
    }
    r.pass = ok;
    return r;
}

} // namespace

bool AlgebraReport::all_pass() const {
    for (const auto& id : identities)
        if (!id.pass) return false;
    return true;
}

const IdentityResult& AlgebraReport::find(const std::string& name) const {
    for (const auto& id : identities)
        if (id.name == name) return id;
    throw std::out_of_range("no identity named " + name);
}

AlgebraReport verify_superalgebra(const MultiSectorModel& model, const VerifyOptions& opts) {
    AlgebraReport report;
    const double tol = opts.structural_tol;
    const int sectors = model.n_sectors();

    // -- structural identities ------------------------------------------------
    BlockOperator h_part = partnership_hamiltonian(model);
    report.identities.push_back(structural(
        "anticommutator_Q_Qdag_equals_H",
        relative_residual(anticommutator(model.Q, model.Qdagger), h_part), tol));

    report.identities.push_back(structural(
        "anticommutator_Q_Q_equals_Z",
        relative_residual(anticommutator(model.Q, model.Q), model.Z), tol));
    report.identities.push_back(structural(
        "anticommutator_Qdag_Qdag_equals_Z",
        relative_residual(anticommutator(model.Qdagger, model.Qdagger), model.Z), tol));

    {
        double resid = anticommutator(model.Qtilde, model.Gamma).max_abs() /
                       std::max(model.Qtilde.max_abs(), 1.0);
        report.identities.push_back(structural("Qtilde_Gamma_anticommutator_zero", resid, tol));
    }

    {
        double w = anticommutator(model.Q, model.Gamma).max_abs();
        bool expected_nonzero = false;
        for (double e : model.eta)
            if (e != 0.0) expected_nonzero = true;
        IdentityResult r;
        r.name = "Q_Gamma_anticommutator_nonzero";
        r.classification = kStructural;
        r.residual = w;
        r.pass = expected_nonzero ? (w > tol) : (w <= tol);
        r.note = expected_nonzero
                     ? "supercharges must not map between grading sectors"
                     : "all eta vanish; the anticommutator is expected to vanish too";
        report.identities.push_back(std::move(r));
    }

    {
        BlockOperator p = model.S;
        for (int k = 1; k < sectors; ++k) p = multiply(p, model.S);
        report.identities.push_back(structural("S_nilpotent", p.max_abs(), tol));
    }

    report.identities.push_back(structural(
        "bps_decomposition_product",
        relative_residual(model.H, add(multiply(model.S.adjointed(), model.S), model.B)),
        tol));

    {
        double worst = 0.0;
        for (const BlockOperator* op : {&model.Q, &model.Qdagger, &model.Qtilde, &model.Gamma})
            worst = std::max(worst, commutator(model.Z, *op).max_abs());
        double scale = std::max(model.Z.max_abs() * std::max(model.Q.max_abs(), 1.0), 1.0);
        report.identities.push_back(structural("central_charge_commutes", worst / scale, tol));
    }

    {
        // B must stay block-diagonal with c-number blocks off the last sector.
        double worst = 0.0;
        for (int i = 0; i < sectors; ++i)
            for (int j = 0; j < sectors; ++j) {
                const auto& blk = model.B.block(i, j);
                if (i != j) {
                    if (blk) worst = std::max(worst, blk->max_abs());
                    continue;
                }
                if (i < sectors - 1 && blk) {
                    BandedMatrix dev =
                        subtract(*blk, BandedMatrix::identity(model.grid.n_points, model.b[i]));
                    worst = std::max(worst, dev.max_abs());
                }
            }
        double scale = std::max(model.B.max_abs(), 1.0);
        report.identities.push_back(structural("B_block_diagonal", worst / scale, tol));
    }

    // -- discretization-limited identities ------------------------------------
    MultiSectorModel fine = build_model(model.family, model.g1, model.partnerships,
                                        model.grid.refined(), model.options);
    auto pool = bump_pool(opts.n_test_vectors, sectors, opts.seed);

    std::vector<BlockVector> vc, vf;
    vc.reserve(pool.size());
    vf.reserve(pool.size());
    for (const auto& specs : pool) {
        vc.push_back(sample_bumps(specs, model.grid));
        vf.push_back(sample_bumps(specs, fine.grid));
    }

    const double floor_c = rounding_floor(model.H);
    const double floor_f = rounding_floor(fine.H);

    auto disc_entry = [&](const std::string& name, const BlockOperator& mc,
                          const BlockOperator& mf) {
        std::vector<double> rc, rf;
        rc.reserve(vc.size());
        rf.reserve(vf.size());
        for (std::size_t t = 0; t < vc.size(); ++t) {
            rc.push_back(block_interior_sup(mc.apply(vc[t])));
            rf.push_back(block_interior_sup(mf.apply(vf[t])));
        }
        report.identities.push_back(ratio_entry(name, rc, rf, floor_c, floor_f, opts));
    };

    disc_entry("commutator_H_Q", commutator(model.H, model.Q), commutator(fine.H, fine.Q));
    disc_entry("commutator_H_Qdag", commutator(model.H, model.Qdagger),
               commutator(fine.H, fine.Qdagger));
    disc_entry("commutator_H_S", commutator(model.H, model.S), commutator(fine.H, fine.S));
    disc_entry("bps_decomposition_analytic",
               subtract(analytic_ladder_hamiltonian(model),
                        add(multiply(model.S.adjointed(), model.S), model.B)),
               subtract(analytic_ladder_hamiltonian(fine),
                        add(multiply(fine.S.adjointed(), fine.S), fine.B)));

    return report;
}

std::string algebra_report_to_json(const AlgebraReport& report, int indent) {
    nlohmann::ordered_json doc;
    doc["all_pass"] = report.all_pass();
    doc["identities"] = nlohmann::ordered_json::array();
    for (const auto& id : report.identities) {
        nlohmann::ordered_json entry;
        entry["name"] = id.name;
        entry["classification"] = id.classification;
        entry["residual"] = id.residual;
        if (id.residual_fine) entry["residual_fine"] = *id.residual_fine;
        if (id.ratio_min) entry["ratio_min"] = *id.ratio_min;
        if (id.ratio_max) entry["ratio_max"] = *id.ratio_max;
        entry["pass"] = id.pass;
        if (!id.note.empty()) entry["note"] = id.note;
        doc["identities"].push_back(std::move(entry));
    }
    return doc.dump(indent);
}

} // namespace siqm
