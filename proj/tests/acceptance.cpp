// Acceptance suite: one criterion per function, one pass/fail line each.
// Run with no arguments for the full battery, or with a criterion number.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siqm/multisector.hpp"
#include "siqm/spectrum.hpp"
#include "siqm/tridiagonal.hpp"
#include "siqm/verify.hpp"

using namespace siqm;
using nlohmann::json;

namespace {

constexpr double kRatioLo = 3.2;
constexpr double kRatioHi = 4.8;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

BlockVector embed(const Wavefunction& psi, int n_sectors, int sector) {
    BlockVector v = BlockVector::zeros(n_sectors, psi.grid.n_points);
    v.sectors[sector - 1] = psi.values;
    return v;
}

// 1. Exact sech-well spectrum at g = 3 plus oracle agreement, within 5 s.
Check criterion_1() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    const auto& pt = lookup("poschl_teller");
    auto exact = exact_energies(pt, 3.0, 3);
    c.require(exact.entries.size() == 3, "expected 3 levels");
    c.require(exact.entries[0].energy == 0.0, "E1 must be exactly 0");
    c.require(exact.entries[1].energy == 5.0, "E2 must be exactly 5");
    c.require(exact.entries[2].energy == 8.0, "E3 must be exactly 8");

    Grid grid(-12.0, 12.0, 2401);
    auto T = build_tridiagonal(
        [&](double x) { return partner_potential(pt, 3.0, x, Ordering::AdaggerA); }, grid);
    auto oracle = lowest_eigenvalues(T, 3);
    auto cmp = compare_spectra(exact, oracle, 1e-3);
    c.require(cmp.pass, "oracle deviation " + fmt(cmp.max_abs_diff) + " > 1e-3");

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs <= 5.0, "runtime " + fmt(secs) + "s exceeds 5s");
    return c;
}

// 2. Telescoping sum equals the closed form g^2 - (g-n+1)^2 for all bound n.
Check criterion_2() {
    Check c;
    const auto& pt = lookup("poschl_teller");
    for (double g : {2.0, 3.0, 4.5}) {
        long bc = *pt.bound_state_count(g);
        auto spec = exact_energies(pt, g, bc);
        for (const auto& e : spec.entries) {
            double d = g - static_cast<double>(e.level) + 1.0;
            double closed = g * g - d * d;
            if (std::fabs(e.energy - closed) > 1e-12) {
                std::ostringstream msg;
                msg << "g=" << g << " n=" << e.level << " |diff|="
                    << std::fabs(e.energy - closed);
                c.require(false, msg.str());
            }
        }
    }
    return c;
}

// 3. Pointwise superpotential identity at machine precision.
Check criterion_3() {
    Check c;
    std::vector<double> xs_pt(100), xs_ho(100);
    for (int i = 0; i < 100; ++i) {
        xs_pt[i] = -10.0 + 20.0 * i / 99.0;
        xs_ho[i] = -8.0 + 16.0 * i / 99.0;
    }
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> pt_g(0.2, 8.0);
    std::uniform_real_distribution<double> ho_w(0.2, 4.0);
    const auto& pt = lookup("poschl_teller");
    const auto& ho = lookup("harmonic");
    for (int trial = 0; trial < 50; ++trial) {
        double rp = shape_invariance_residual(pt, pt_g(gen), xs_pt);
        double rh = shape_invariance_residual(ho, ho_w(gen), xs_ho);
        c.require(rp <= 1e-12, "sech-well residual " + fmt(rp));
        c.require(rh <= 1e-12, "oscillator residual " + fmt(rh));
    }
    return c;
}

// 4. Structural algebra suite on the four-sector model at 1e-12.
Check criterion_4() {
    Check c;
    Grid grid(-12.0, 12.0, 2401);
    auto m = build_model(lookup("poschl_teller"), 3.0, 2, grid);
    auto report = verify_superalgebra(m);
    for (const char* name :
         {"anticommutator_Q_Qdag_equals_H", "anticommutator_Q_Q_equals_Z",
          "Qtilde_Gamma_anticommutator_zero", "S_nilpotent", "bps_decomposition_product"}) {
        const auto& id = report.find(name);
        c.require(id.residual <= 1e-12,
                  std::string(name) + " residual " + fmt(id.residual));
    }
    return c;
}

// 5. Shift-operator conservation: commutator residual decays by ~4 per halving.
Check criterion_5() {
    Check c;
    Grid grid(-12.0, 12.0, 2401);
    auto m = build_model(lookup("poschl_teller"), 3.0, 2, grid);
    VerifyOptions opts;
    opts.n_test_vectors = 10;
    opts.seed = 42;
    auto report = verify_superalgebra(m, opts);
    const auto& id = report.find("commutator_H_S");
    c.require(id.ratio_min.has_value(), "no decay ratios recorded");
    if (id.ratio_min) {
        c.require(*id.ratio_min >= kRatioLo,
                  "slowest vector ratio " + fmt(*id.ratio_min));
        c.require(*id.ratio_max <= kRatioHi,
                  "fastest vector ratio " + fmt(*id.ratio_max));
    }
    return c;
}

// 6. BPS saturation: unique oracle level at b_j, matching state, Spsi -> 0 at O(h^2).
Check criterion_6() {
    Check c;
    const auto& pt = lookup("poschl_teller");
    Grid grid(-12.0, 12.0, 2401);
    auto m = build_model(pt, 3.0, 2, grid);
    auto mf = build_model(pt, 3.0, 2, grid.refined());
    auto states = bps_states(m);
    auto states_f = bps_states(mf);
    c.require(states.size() == 3, "expected one BPS state per open sector");

    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& bps = states[k];
        auto T = build_tridiagonal(m.sector_potential(bps.sector), grid);
        long bc = *m.sector_bound_count(bps.sector);
        auto evs = lowest_eigenvalues(T, static_cast<int>(bc));
        int hits = 0;
        double lam = 0.0;
        for (const auto& e : evs.entries)
            if (std::fabs(e.energy - bps.energy) <= 1e-3) {
                ++hits;
                lam = e.energy;
            }
        std::string tag = "sector " + std::to_string(bps.sector);
        c.require(hits == 1, tag + ": " + std::to_string(hits) + " levels at b_j");
        if (hits == 1) {
            auto vec = eigenvector(T, lam, grid);
            double ov = std::fabs(vec.overlap(bps.state));
            c.require(ov >= 0.999, tag + ": oracle overlap " + fmt(ov));
        }
        double rc = block_interior_sup(m.S.apply(embed(bps.state, 4, bps.sector)));
        double rf = block_interior_sup(
            mf.S.apply(embed(states_f[k].state, 4, states_f[k].sector)));
        double ratio = rc / rf;
        c.require(ratio >= kRatioLo && ratio <= kRatioHi,
                  tag + ": |S psi| halving ratio " + fmt(ratio));
    }
    return c;
}

// 7. Level-diagram alignment flags through the figure command.
Check criterion_7() {
    Check c;
    const std::string base = std::string(SIQM_CLI_BIN) +
                             " figure --family poschl_teller --g 3 --partnerships 2";
    auto run_figure = [&](const std::string& extra, const char* path) -> json {
        std::string cmd = base + extra + " --out " + path + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) return json();
        std::ifstream in(path);
        return json::parse(in, nullptr, false);
    };

    json plain = run_figure("", "acceptance_figure.json");
    c.require(!plain.is_discarded() && !plain.is_null(), "figure command failed");
    if (plain.contains("data")) {
        c.require(plain["data"]["sectors"].size() == 4, "expected 4 sector columns");
        for (const auto& flag : plain["data"]["alignment"])
            c.require(flag["aligned"] == true, "pair not aligned in the intact model");
    }

    json broken = run_figure(" --broken-alignment 0.7", "acceptance_figure_broken.json");
    c.require(!broken.is_discarded() && !broken.is_null(), "broken figure command failed");
    if (broken.contains("data")) {
        for (const auto& flag : broken["data"]["alignment"]) {
            bool internal = flag["same_partnership"] == true;
            bool aligned = flag["aligned"] == true;
            c.require(aligned == internal,
                      "pair (" + std::to_string(int(flag["lower"])) + "," +
                          std::to_string(int(flag["upper"])) + ") aligned=" +
                          (aligned ? "true" : "false"));
        }
    }
    return c;
}

// 8. Orthonormality, node counts, and eigen-residual decay for levels 1-3.
Check criterion_8() {
    Check c;
    const auto& pt = lookup("poschl_teller");
    Grid grid(-12.0, 12.0, 2401);

    std::vector<Wavefunction> states;
    for (long n = 1; n <= 3; ++n) states.push_back(excited_state(pt, 3.0, n, grid));

    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double expect = a == b ? 1.0 : 0.0;
            double dev = std::fabs(states[a].overlap(states[b]) - expect);
            c.require(dev <= 1e-3, "overlap(" + std::to_string(a + 1) + "," +
                                       std::to_string(b + 1) + ") off by " + fmt(dev));
        }

    for (int n = 1; n <= 3; ++n)
        c.require(states[n - 1].node_count() == n - 1,
                  "level " + std::to_string(n) + " has " +
                      std::to_string(states[n - 1].node_count()) + " nodes");

    auto residual = [&](const Grid& g, long n) {
        auto h = hamiltonian(pt, 3.0, g, Ordering::AdaggerA, Mode::analytic);
        auto psi = excited_state(pt, 3.0, n, g);
        auto hv = h.matrix.apply(psi.values);
        double e = exact_energies(pt, 3.0, n).entries[n - 1].energy;
        for (int i = 0; i < g.n_points; ++i) hv[i] -= e * psi.values[i];
        // ladder applications widen the artifact margin with the level
        return interior_sup_norm(hv, 2 * static_cast<int>(n));
    };
    for (long n = 1; n <= 3; ++n) {
        double ratio = residual(grid, n) / residual(grid.refined(), n);
        c.require(ratio >= kRatioLo && ratio <= kRatioHi,
                  "level " + std::to_string(n) + " residual ratio " + fmt(ratio));
    }
    return c;
}

// 9. Multiplet shortening: chain lengths 1, 2, 3 from the BPS roots; 4 generically.
Check criterion_9() {
    Check c;
    Grid grid(-12.0, 12.0, 2401);
    auto m = build_model(lookup("poschl_teller"), 3.0, 2, grid);
    for (int j = 1; j <= 3; ++j) {
        auto chain = multiplet_chain(m, j, 1);
        c.require(static_cast<int>(chain.size()) == j,
                  "BPS chain from sector " + std::to_string(j) + " has length " +
                      std::to_string(chain.size()));
    }
    auto generic = multiplet_chain(m, 4, 1);
    c.require(generic.size() == 4,
              "generic sector-4 chain has length " + std::to_string(generic.size()));
    return c;
}

// 10. Oracle sanity: empty box and shifted oscillator.
Check criterion_10() {
    Check c;
    Grid box(-12.0, 12.0, 2401);
    auto Tbox = build_tridiagonal([](double) { return 0.0; }, box);
    double L = box.x_max - box.x_min;
    double expect = std::numbers::pi * std::numbers::pi / (L * L);
    double got = lowest_eigenvalues(Tbox, 1).entries[0].energy;
    c.require(std::fabs(got - expect) <= 1e-3,
              "box level " + fmt(got) + " vs " + fmt(expect));

    Grid hgrid(-10.0, 10.0, 2001);
    auto Tho = build_tridiagonal([](double x) { return x * x - 1.0; }, hgrid);
    auto spec = lowest_eigenvalues(Tho, 3);
    for (int n = 0; n < 3; ++n)
        c.require(std::fabs(spec.entries[n].energy - 2.0 * n) <= 1e-3,
                  "oscillator level " + std::to_string(n + 1) + " = " +
                      fmt(spec.entries[n].energy));
    return c;
}

struct Criterion {
    int number;
    const char* summary;
    std::function<Check()> fn;
};

const std::vector<Criterion> kCriteria = {
    {1, "sech-well exact spectrum (0, 5, 8) with oracle agreement", criterion_1},
    {2, "closed-form energy cross-check at g = 2, 3, 4.5", criterion_2},
    {3, "pointwise shape-invariance residual at machine precision", criterion_3},
    {4, "structural superalgebra identities at 1e-12", criterion_4},
    {5, "shift-operator conservation under grid refinement", criterion_5},
    {6, "BPS saturation and Bogomol'nyi equation", criterion_6},
    {7, "cross-sector degeneracy alignment flags", criterion_7},
    {8, "wavefunction orthonormality, nodes, eigen-residual decay", criterion_8},
    {9, "multiplet shortening at BPS roots", criterion_9},
    {10, "finite-difference oracle sanity", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& crit : kCriteria) {
        if (only != 0 && crit.number != only) continue;
        Check result = crit.fn();
        if (result.ok) {
            std::printf("[PASS] criterion %2d: %s\n", crit.number, crit.summary);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%s)\n", crit.number, crit.summary,
                        result.detail.c_str());
        }
    }
    return failures;
}
