// Microbenchmarks for the hot paths: shell enumeration, theta tables,
// LLL reduction, and the hyperboloid slice machinery.

#include <benchmark/benchmark.h>

#include "specdiv/specdiv.hpp"

using namespace specdiv;
using namespace specdiv::lattices;

static void bm_short_vectors_e8(benchmark::State& state) {
    IntegralLattice l = e8();
    Int m(state.range(0));
    for (auto _ : state) {
        NormSlice s = short_vectors(l, m);
        benchmark::DoNotOptimize(s.vectors.size());
    }
}
BENCHMARK(bm_short_vectors_e8)->Arg(2)->Arg(6)->Arg(10);

static void bm_theta_a1k(benchmark::State& state) {
    IntegralLattice d = a1(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ThetaTable t = theta_series(d, Rat(1024));
        benchmark::DoNotOptimize(t.coset_count());
    }
}
BENCHMARK(bm_theta_a1k)->Arg(2)->Arg(4)->Arg(6);

static void bm_theta_e8_enumerated(benchmark::State& state) {
    IntegralLattice l = e8();
    for (auto _ : state) {
        ThetaTable t = theta_series(l, Rat(state.range(0)));
        benchmark::DoNotOptimize(t.counts(0).size());
    }
}
BENCHMARK(bm_theta_e8_enumerated)->Arg(8)->Arg(16);

static void bm_lll_random(benchmark::State& state) {
    // fixed skewed basis of a rank-6 lattice
    IMat u = IMat::identity(6);
    long shear = 3;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) u.at(i, j) = ((i + 2 * j) % 5) - 2 + shear * (i == 0 && j == 5);
    IntegralLattice base = a1(6);
    IMat g = mul(mul(u.transposed(), base.gram()), u);
    for (auto _ : state) {
        LllResult r = lll_reduce(IntegralLattice(g));
        benchmark::DoNotOptimize(r.transform.at(0, 0) == 0);
    }
}
BENCHMARK(bm_lll_random);

static void bm_majorant_slices(benchmark::State& state) {
    IntegralLattice k = direct_sum(hyperbolic_plane(), a1());
    LatticeVector omega = {Int(1), Int(-1), Int(0)};
    Int m(state.range(0));
    for (auto _ : state) {
        auto slices = majorant_slice_counts(k, omega, m, Rat(64 * m));
        benchmark::DoNotOptimize(slices.size());
    }
}
BENCHMARK(bm_majorant_slices)->Arg(16)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
