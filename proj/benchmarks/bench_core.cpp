#include <benchmark/benchmark.h>

#include "siqm/multisector.hpp"
#include "siqm/spectrum.hpp"
#include "siqm/tridiagonal.hpp"
#include "siqm/verify.hpp"

namespace {

const siqm::Grid kGrid(-12.0, 12.0, 2401);

void BM_SturmLowestThree(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    auto T = siqm::build_tridiagonal(
        [&](double x) { return siqm::partner_potential(pt, 3.0, x, siqm::Ordering::AdaggerA); },
        kGrid);
    for (auto _ : state) {
        auto spec = siqm::lowest_eigenvalues(T, 3);
        benchmark::DoNotOptimize(spec);
    }
}
BENCHMARK(BM_SturmLowestThree);

void BM_InverseIteration(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    auto T = siqm::build_tridiagonal(
        [&](double x) { return siqm::partner_potential(pt, 3.0, x, siqm::Ordering::AdaggerA); },
        kGrid);
    double lam = siqm::lowest_eigenvalues(T, 2).entries[1].energy;
    for (auto _ : state) {
        auto v = siqm::eigenvector(T, lam, kGrid);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_InverseIteration);

void BM_ExcitedState(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    for (auto _ : state) {
        auto psi = siqm::excited_state(pt, 3.0, 3, kGrid);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_ExcitedState);

void BM_BuildFourSectorModel(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    for (auto _ : state) {
        auto m = siqm::build_model(pt, 3.0, 2, kGrid);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_BuildFourSectorModel);

void BM_StructuralAnticommutator(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    auto m = siqm::build_model(pt, 3.0, 2, kGrid);
    for (auto _ : state) {
        auto qq = siqm::anticommutator(m.Q, m.Qdagger);
        benchmark::DoNotOptimize(qq);
    }
}
BENCHMARK(BM_StructuralAnticommutator);

void BM_VerifySuperalgebra(benchmark::State& state) {
    const auto& pt = siqm::lookup("poschl_teller");
    siqm::Grid grid(-12.0, 12.0, 601);
    auto m = siqm::build_model(pt, 3.0, 2, grid);
    for (auto _ : state) {
        auto report = siqm::verify_superalgebra(m);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_VerifySuperalgebra);

} // namespace

BENCHMARK_MAIN();
