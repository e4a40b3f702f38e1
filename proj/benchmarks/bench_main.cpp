#include <benchmark/benchmark.h>

#include "hamlag/elliptic.hpp"
#include "hamlag/error.hpp"
#include "hamlag/immersion.hpp"
#include "hamlag/profile.hpp"
#include "hamlag/torus.hpp"
#include "hamlag/verify.hpp"

namespace {

hamlag::params::ResolvedConstants example_constants() {
  hamlag::params::SeedParameters s;
  s.alpha = {0.0, -1.0, 3.0};
  s.a1 = 2.0;
  s.a2 = 1.0;
  return hamlag::params::resolve(s);
}

void BM_CompleteK(benchmark::State& state) {
  const hamlag::elliptic::EllipticParameter m(0.42677669529663687);
  for (auto _ : state) benchmark::DoNotOptimize(hamlag::elliptic::complete_K(m));
}
BENCHMARK(BM_CompleteK);

void BM_JacobiSnCnDn(benchmark::State& state) {
  const hamlag::elliptic::EllipticParameter m(0.42677669529663687);
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hamlag::elliptic::jacobi_sn_cn_dn(u, m));
    u += 1e-3;
  }
}
BENCHMARK(BM_JacobiSnCnDn);

void BM_ProfileSample(benchmark::State& state) {
  const hamlag::profile::RadialProfile p(example_constants());
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.sample(x));
    x += 1e-3;
    if (x > p.period()) x = 0.0;
  }
}
BENCHMARK(BM_ProfileSample);

void BM_Frame(benchmark::State& state) {
  const hamlag::profile::RadialProfile p(example_constants());
  for (auto _ : state) benchmark::DoNotOptimize(hamlag::immersion::frame(0.7, 0.3, p));
}
BENCHMARK(BM_Frame);

void BM_VerifySuite(benchmark::State& state) {
  const auto k = example_constants();
  hamlag::verify::SuiteOptions opts;
  opts.grid.nx = static_cast<int>(state.range(0));
  opts.grid.ny = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hamlag::verify::run_suite(k, opts));
}
BENCHMARK(BM_VerifySuite)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SearchNode(benchmark::State& state) {
  hamlag::torus::SearchConfig c;
  c.n_a1 = 1;
  c.n_a2 = 1;
  c.a1 = {2.4565217391304346, 2.4565217391304346};
  c.a2 = {1.4, 1.4};
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(hamlag::torus::search(c));
    } catch (const hamlag::Error&) {
    }
  }
}
BENCHMARK(BM_SearchNode)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
