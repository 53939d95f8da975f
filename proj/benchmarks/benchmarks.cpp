#include <benchmark/benchmark.h>

#include <trion/rational.hpp>
#include <trion/variational.hpp>
#include <trion/vibrational.hpp>

using namespace trion;

namespace {

void BM_PotentialIntegral(benchmark::State& state) {
  DimensionParams dim(static_cast<double>(state.range(0)));
  BasisFunction f{0.4, 2.5, 0.1}, g{3.0, 0.7, 0.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(potential_integral(f, g, 1.3, dim, Symmetry::Symmetric));
}
BENCHMARK(BM_PotentialIntegral)->Arg(2)->Arg(3);

void BM_Assemble(benchmark::State& state) {
  DimensionParams d2(2.0);
  auto basis = build_basis(d2, Symmetry::Symmetric, 0.5, BasisConfig::standard());
  for (auto _ : state) benchmark::DoNotOptimize(assemble(basis));
  state.SetLabel(std::to_string(basis.size()) + " functions");
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_SolveLowest(benchmark::State& state) {
  DimensionParams d2(2.0);
  auto pair = assemble(build_basis(d2, Symmetry::Symmetric, 0.5, BasisConfig::standard()));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lowest(pair));
}
BENCHMARK(BM_SolveLowest)->Unit(benchmark::kMillisecond);

void BM_ComputeTerm(benchmark::State& state) {
  DimensionParams d2(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(compute_term(0.5, d2, Symmetry::Symmetric));
}
BENCHMARK(BM_ComputeTerm)->Unit(benchmark::kMillisecond);

void BM_EvaluateApproximant(benchmark::State& state) {
  auto ap = published_approximant(Symmetry::Antisymmetric);
  double R = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(ap, R));
    R = R > 50.0 ? 0.1 : R * 1.01;
  }
}
BENCHMARK(BM_EvaluateApproximant);

void BM_CountBoundStates(benchmark::State& state) {
  auto term = term_function(published_approximant(Symmetry::Symmetric));
  VibrationalProblem p{static_cast<double>(state.range(0)), 1.0, Symmetry::Symmetric, term, true};
  for (auto _ : state) benchmark::DoNotOptimize(count_bound_states(p));
}
BENCHMARK(BM_CountBoundStates)->Arg(10)->Arg(1836)->Unit(benchmark::kMillisecond);

void BM_CriticalMass(benchmark::State& state) {
  auto term = term_function(published_approximant(Symmetry::Symmetric));
  for (auto _ : state)
    benchmark::DoNotOptimize(critical_mass(term, Symmetry::Symmetric, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CriticalMass)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
