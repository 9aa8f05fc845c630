// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "chowcalc/exceptional.hpp"
#include "chowcalc/kernels.hpp"
#include "chowcalc/sample.hpp"

using namespace chowcalc;

namespace {

struct Operands {
  ring::GradedClass a, b;
};

Operands operands(int terms) {
  sample::Rng rng(7);
  const auto ctx = sample::bundle_context(10);
  const std::vector<std::string> vars{"a", "b", "c", "d", "z", "n"};
  return {sample::random_poly(rng, ctx, vars, 0, 10, terms), sample::random_poly(rng, ctx, vars, 0, 10, terms)};
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto op = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::multiply(op.a.terms(), op.b.terms(), 10));
}

void BM_MultiplyOmp(benchmark::State& state) {
  const auto op = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::multiply(op.a.terms(), op.b.terms(), 10));
}

void BM_EtaSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::eta_power_series(24, static_cast<std::size_t>(state.range(0))));
}

void BM_EtaOmp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::eta_power_series(24, static_cast<std::size_t>(state.range(0))));
}

struct Candidates {
  lattice::SurfaceGeometry g;
  lattice::LatticeClass c;
  std::vector<lattice::LatticeClass> cands;
};

// Orthogonal (-1)-classes: every subset is admissible.
Candidates orthogonal(std::size_t n) {
  std::vector<std::vector<lattice::Int>> gram(n, std::vector<lattice::Int>(n, 0));
  std::vector<lattice::LatticeClass> cands;
  for (std::size_t i = 0; i < n; ++i) {
    gram[i][i] = -1;
    std::vector<lattice::Int> v(n, 0);
    v[i] = 1;
    cands.emplace_back(v, 1);
  }
  const auto k_sq = -static_cast<lattice::Int>(n);
  return {lattice::SurfaceGeometry(gram, std::vector<lattice::Int>(n, 1), 0, 0, 12 * 2 - k_sq, 0),
          lattice::LatticeClass(std::vector<lattice::Int>(n, 1)), cands};
}

void BM_EnumerateSerial(benchmark::State& state) {
  const auto in = orthogonal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(exceptional::serial::enumerate_collections(in.c, in.cands, in.g, in.cands.size()));
}

void BM_EnumerateOmp(benchmark::State& state) {
  const auto in = orthogonal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(exceptional::enumerate_collections(in.c, in.cands, in.g, in.cands.size()));
}

void BM_ConeOrderSerial(benchmark::State& state) {
  const auto in = orthogonal(static_cast<std::size_t>(state.range(0)));
  const auto cols = exceptional::enumerate_collections(in.c, in.cands, in.g, in.cands.size());
  for (auto _ : state) benchmark::DoNotOptimize(exceptional::serial::cone_partial_order(cols));
}

void BM_ConeOrderOmp(benchmark::State& state) {
  const auto in = orthogonal(static_cast<std::size_t>(state.range(0)));
  const auto cols = exceptional::enumerate_collections(in.c, in.cands, in.g, in.cands.size());
  for (auto _ : state) benchmark::DoNotOptimize(exceptional::cone_partial_order(cols));
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->Arg(40)->Arg(160);
BENCHMARK(BM_MultiplyOmp)->Arg(40)->Arg(160);
BENCHMARK(BM_EtaSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_EtaOmp)->Arg(100)->Arg(400);
BENCHMARK(BM_EnumerateSerial)->Arg(8)->Arg(12);
BENCHMARK(BM_EnumerateOmp)->Arg(8)->Arg(12);
BENCHMARK(BM_ConeOrderSerial)->Arg(4)->Arg(5);
BENCHMARK(BM_ConeOrderOmp)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
