#include <benchmark/benchmark.h>

#include "gl3p/branching.hpp"
#include "gl3p/eisenstein.hpp"
#include "gl3p/iwasawa.hpp"
#include "gl3p/symsq.hpp"
#include "gl3p/zeta_local.hpp"

using namespace gl3p;

static void BM_ZetaBruteforce(benchmark::State& state) {
    auto zi = ZetaInput::principal(state.range(0), Rat(2, 7), Rat(-3), Rat(5, 2));
    for (auto _ : state) benchmark::DoNotOptimize(Y_bruteforce(zi));
}
BENCHMARK(BM_ZetaBruteforce)->Arg(3)->Arg(5);

static void BM_ZetaClosedForm(benchmark::State& state) {
    auto zi = ZetaInput::principal(state.range(0), Rat(2, 7), Rat(-3), Rat(5, 2));
    for (auto _ : state) benchmark::DoNotOptimize(Y_closed_form(zi));
}
BENCHMARK(BM_ZetaClosedForm)->Arg(3)->Arg(5);

static void BM_Branching(benchmark::State& state) {
    Gl3Irrep v(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(restrict_decompose(v));
}
BENCHMARK(BM_Branching)->DenseRange(1, 4);

static void BM_BrMap(benchmark::State& state) {
    Gl3Irrep v(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(br_map(v, 0));
}
BENCHMARK(BM_BrMap)->DenseRange(1, 4);

static void BM_Distribution(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(schwartz_distribution_check(state.range(0), 1));
}
BENCHMARK(BM_Distribution)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Smoothing(benchmark::State& state) {
    GroupRingElem top(5, static_cast<int>(state.range(0)));
    top.set(1, 1);
    top.set(4, -2);
    auto m = tower_to_measure(synthetic_tower(top, 1, 0));
    auto chi = DirichletCharacter::quadratic(3);
    for (auto _ : state) benchmark::DoNotOptimize(remove_smoothing(apply_smoothing(m, 11, 1, chi), 11, 1, chi));
}
BENCHMARK(BM_Smoothing)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_DeltaCoefficients(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(delta_form(state.range(0)));
}
BENCHMARK(BM_DeltaCoefficients)->Arg(100)->Arg(300);

static void BM_ZetaTwo(benchmark::State& state) {
    NumericOptions opt;
    opt.digits = static_cast<int>(state.range(0));
    auto spec = riemann_zeta_spec(100);
    for (auto _ : state) benchmark::DoNotOptimize(numeric_L_value(spec, Complex(2), opt));
}
BENCHMARK(BM_ZetaTwo)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
