#include <benchmark/benchmark.h>

#include "qsat/fastsim.hpp"
#include "qsat/sat.hpp"
#include "qsat/simulator.hpp"
#include "qsat/synthesis.hpp"

namespace {

qsat::AngleSchedule ramp(std::size_t p) {
  std::vector<double> g(p), b(p);
  for (std::size_t r = 0; r < p; ++r) {
    g[r] = 0.1 + 0.05 * static_cast<double>(r);
    b[r] = 0.6 - 0.02 * static_cast<double>(r);
  }
  return {g, b};
}

void BM_CostTable(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const qsat::KSatInstance inst = qsat::generate_random_ksat(n, 3, 4.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(qsat::cost_table(inst));
}
BENCHMARK(BM_CostTable)->Arg(10)->Arg(16)->Arg(20);

void BM_FastsimValueAndGradient(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto p = static_cast<std::size_t>(state.range(1));
  qsat::QaoaEvaluator eval(qsat::generate_random_ksat(n, 3, 4.0, 2));
  const qsat::AngleSchedule angles = ramp(p);
  for (auto _ : state) benchmark::DoNotOptimize(eval.value_and_gradient(angles));
}
BENCHMARK(BM_FastsimValueAndGradient)->Args({6, 12})->Args({10, 20})->Args({14, 10})->Unit(benchmark::kMillisecond);

void BM_FastsimExpectation(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  qsat::QaoaEvaluator eval(qsat::generate_random_ksat(n, 3, 4.0, 3));
  const qsat::AngleSchedule angles = ramp(10);
  for (auto _ : state) benchmark::DoNotOptimize(eval.expectation(angles));
}
BENCHMARK(BM_FastsimExpectation)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BuildCircuit(benchmark::State& state) {
  const auto k = static_cast<std::uint32_t>(state.range(0));
  const qsat::KSatInstance inst = qsat::generate_random_ksat(20, k, 4.0, 4);
  const qsat::AngleSchedule angles = ramp(10);
  for (auto _ : state) benchmark::DoNotOptimize(qsat::build_qaoa_circuit(inst, angles));
}
BENCHMARK(BM_BuildCircuit)->Arg(3)->Arg(4);

void BM_GateLevelExpectation(benchmark::State& state) {
  const auto k = static_cast<std::uint32_t>(state.range(0));
  const qsat::KSatInstance inst = qsat::generate_random_ksat(8, k, k == 3 ? 4.0 : 2.0, 5);
  const qsat::Circuit c = qsat::build_qaoa_circuit(inst, ramp(3));
  for (auto _ : state) benchmark::DoNotOptimize(qsat::exact_expectation_gate_level(c, inst, 9));
}
BENCHMARK(BM_GateLevelExpectation)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
