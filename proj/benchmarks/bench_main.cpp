#include <benchmark/benchmark.h>

#include "wqed/ed_oracle.hpp"
#include "wqed/excitation_subspace.hpp"
#include "wqed/polaron_single.hpp"
#include "wqed/polaron_two.hpp"

using namespace wqed;

static void BM_Solve1Q(benchmark::State& state) {
    const auto m = ModelParams::single(0.3, 0.3, 1.0, 0.2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_1q(m).delta_r);
}
BENCHMARK(BM_Solve1Q)->Arg(400)->Arg(2000)->Arg(10000);

static void BM_Solve2Q(benchmark::State& state) {
    const auto m = ModelParams::pair(0.3, 0.3, 5, 1.0, 0.2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_2q(m).j_ising);
}
BENCHMARK(BM_Solve2Q)->Arg(400)->Arg(2000);

static void BM_BoundState1Q(benchmark::State& state) {
    const auto m = ModelParams::single(0.3, 0.3, 1.0, 0.2, static_cast<int>(state.range(0)));
    const auto s = solve_1q(m);
    for (auto _ : state) benchmark::DoNotOptimize(find_bound_state_1q(s, m).energy);
}
BENCHMARK(BM_BoundState1Q)->Arg(2000)->Arg(10000);

static void BM_BoundState1QDense(benchmark::State& state) {
    const auto m = ModelParams::single(0.3, 0.3, 1.0, 0.2, static_cast<int>(state.range(0)));
    const auto s = solve_1q(m);
    for (auto _ : state) benchmark::DoNotOptimize(find_bound_state_1q_dense(s, m).energy);
}
BENCHMARK(BM_BoundState1QDense)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_BoundStates2Q(benchmark::State& state) {
    const auto m = ModelParams::pair(0.3, 0.3, 5, 1.0, 0.2, 2000);
    const auto s = solve_2q(m);
    for (auto _ : state) benchmark::DoNotOptimize(find_bound_states_2q(s, m).size());
}
BENCHMARK(BM_BoundStates2Q);

static void BM_EdGroundState(benchmark::State& state) {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, static_cast<int>(state.range(0)));
    EdConfig ed;
    for (auto _ : state) benchmark::DoNotOptimize(lowest_states(m, ed, 1).states[0].energy);
}
BENCHMARK(BM_EdGroundState)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_EdBasis(benchmark::State& state) {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, 12);
    EdConfig ed;
    ed.n_max = 4;
    ed.n_total = 6;
    for (auto _ : state) benchmark::DoNotOptimize(build_basis(m, ed, 1).size());
}
BENCHMARK(BM_EdBasis)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
