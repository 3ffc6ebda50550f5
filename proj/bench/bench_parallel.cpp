#include <benchmark/benchmark.h>

#include "wavedisk/parallel.hpp"

using namespace wavedisk;

namespace {

std::vector<double> speed_grid(int n) {
  std::vector<double> cs;
  for (int k = 0; k < n; ++k) cs.push_back(0.5 + 3.0 * k / (n - 1));
  return cs;
}

PlanarSystem saturating_poly(int s, int c) {
  return desingularize(make_tw_system(saturating_cubic(Rational(s)), Rational(c)));
}

void BM_OracleSweepSerial(benchmark::State& st) {
  const auto cs = speed_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(oracle_sweep_serial(1.0, cs));
}

void BM_OracleSweepOmp(benchmark::State& st) {
  const auto cs = speed_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(oracle_sweep(1.0, cs));
}

void BM_ClassSweepSerial(benchmark::State& st) {
  const std::vector<double> ss{0.5, 1.0, 2.0};
  const std::vector<double> cs{1.0, 2.5, 3.0};
  for (auto _ : st) benchmark::DoNotOptimize(sweep_serial(ss, cs));
}

void BM_ClassSweepOmp(benchmark::State& st) {
  const std::vector<double> ss{0.5, 1.0, 2.0};
  const std::vector<double> cs{1.0, 2.5, 3.0};
  for (auto _ : st) benchmark::DoNotOptimize(sweep(ss, cs));
}

void BM_PortraitFanSerial(benchmark::State& st) {
  const PlanarSystem poly = saturating_poly(1, 3);
  const auto seeds = ring_seeds(static_cast<int>(st.range(0)), 5.0);
  DiskOptions d;
  d.horizon = 200;
  for (auto _ : st) benchmark::DoNotOptimize(portrait_fan_serial(poly, seeds, d));
}

void BM_PortraitFanOmp(benchmark::State& st) {
  const PlanarSystem poly = saturating_poly(1, 3);
  const auto seeds = ring_seeds(static_cast<int>(st.range(0)), 5.0);
  DiskOptions d;
  d.horizon = 200;
  for (auto _ : st) benchmark::DoNotOptimize(portrait_fan(poly, seeds, d));
}

void BM_NewtonGridSerial(benchmark::State& st) {
  const PlanarSystem poly = saturating_poly(1, 3);
  for (auto _ : st) benchmark::DoNotOptimize(finite_equilibria_serial(poly, {-10, 10, -10, 10}));
}

void BM_NewtonGridOmp(benchmark::State& st) {
  const PlanarSystem poly = saturating_poly(1, 3);
  for (auto _ : st) benchmark::DoNotOptimize(finite_equilibria(poly, {-10, 10, -10, 10}));
}

}  // namespace

BENCHMARK(BM_OracleSweepSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepOmp)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassSweepOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PortraitFanSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PortraitFanOmp)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NewtonGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NewtonGridOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
