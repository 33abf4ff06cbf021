#include <benchmark/benchmark.h>

#include "wnv/integrator.hpp"
#include "wnv/orbit.hpp"

namespace {

wnv::Parameters light_block() { return {0.357, 1000.0, 0.035, 0.01, 0.09, 0.8, 400.0}; }
wnv::ControlPolicy light_policy() { return {0.15, 0.45, 250.0}; }

void BM_vector_field(benchmark::State& state) {
  const auto p = light_block();
  wnv::State s{771.0, 137.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wnv::vector_field(s, p));
  }
}
BENCHMARK(BM_vector_field);

void BM_logistic_closed_form(benchmark::State& state) {
  const auto p = light_block();
  for (auto _ : state) {
    benchmark::DoNotOptimize(wnv::logistic_closed_form(100.0, 25.0, p));
  }
}
BENCHMARK(BM_logistic_closed_form);

void BM_flight(benchmark::State& state) {
  const auto p = light_block();
  const auto policy = light_policy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(wnv::poincare_map(700.0, p, policy));
  }
}
BENCHMARK(BM_flight);

void BM_simulate_20_impulses(benchmark::State& state) {
  const auto p = light_block();
  const auto policy = light_policy();
  wnv::SimOptions opts;
  opts.t_max = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wnv::simulate({771.0, 137.0}, p, policy, opts));
  }
}
BENCHMARK(BM_simulate_20_impulses);

void BM_find_order1(benchmark::State& state) {
  const auto p = light_block();
  const auto policy = light_policy();
  for (auto _ : state) {
    benchmark::DoNotOptimize(wnv::find_order1(p, policy));
  }
}
BENCHMARK(BM_find_order1);

}  // namespace

BENCHMARK_MAIN();
