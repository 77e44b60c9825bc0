// Serial reference path against the OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>

#include "superosc/mpnum/precision.hpp"
#include "superosc/periodic.hpp"
#include "superosc/realline.hpp"
#include "superosc/scalinglab.hpp"

using namespace superosc;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

RealVector grid(Precision p, long count) {
  RealVector g;
  for (long i = 0; i < count; ++i) g.push_back(BigReal(-20, p) + BigReal::rational(40 * i, count - 1, p));
  return g;
}

void BM_SampleRealLine(benchmark::State& state) {
  const Precision p = required_precision(5, BigReal::rational(1, 10, Precision(128)));
  RealVector t, a;
  for (long i = 0; i < 5; ++i) {
    t.push_back(BigReal::rational(i + 1, 10, p));
    a.emplace_back(i % 2 == 0 ? -1 : 1, p);
  }
  auto f = realline::min_energy_signal(realline::PointSet::create(t, a), realline::Bandlimit::create(BigReal(1, p)));
  auto g = grid(p, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(realline::sample(f, g, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

void BM_SamplePeriodic(benchmark::State& state) {
  const Precision p = required_precision(7, BigReal::rational(1, 10, Precision(128)));
  RealVector t, a;
  for (long i = 0; i < 7; ++i) {
    t.push_back(BigReal::rational(i - 3, 10, p));
    a.emplace_back(i % 2 == 0 ? 1 : -1, p);
  }
  auto f = periodic::min_energy_periodic(periodic::PeriodicPointSet::create(t, a), periodic::PeriodicBandlimit::create(3));
  auto g = grid(p, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(periodic::sample_periodic(f, g, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

void BM_Sweep(benchmark::State& state) {
  scalinglab::SweepSpec spec = scalinglab::SweepSpec::standard();
  spec.m_values = {5, 7, 9, 11, 13};
  for (auto _ : state) benchmark::DoNotOptimize(scalinglab::run_sweep(spec, mode(state)));
}

}  // namespace

BENCHMARK(BM_SampleRealLine)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplePeriodic)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
