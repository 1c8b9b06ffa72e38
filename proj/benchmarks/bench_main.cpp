#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dynfair/adversary.hpp"
#include "dynfair/audit.hpp"
#include "dynfair/dfd.hpp"
#include "dynfair/runner.hpp"
#include "dynfair/ud.hpp"
#include "dynfair/valuation.hpp"

using namespace dynfair;

namespace {

PiecewiseConstantValuation bench_valuation(std::mt19937_64& rng, int max_segments) {
  std::uniform_int_distribution<int> grid(1, 255);
  std::uniform_int_distribution<int> density(1, 9);
  std::vector<int> cuts;
  for (int i = 1; i < max_segments; ++i) cuts.push_back(grid(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<PiecewiseConstantValuation::Segment> segs;
  int prev = 0;
  for (int c : cuts) {
    segs.push_back({Rat(prev, 256), Rat(c, 256), Rat(density(rng))});
    prev = c;
  }
  segs.push_back({Rat(prev, 256), Rat(1), Rat(density(rng))});
  return PiecewiseConstantValuation(std::move(segs)).normalized();
}

IntervalSet bench_set(std::mt19937_64& rng, int pieces) {
  std::uniform_int_distribution<int> grid(0, 1024);
  std::vector<IntervalSet::Piece> out;
  for (int i = 0; i < pieces; ++i) {
    int a = grid(rng), b = grid(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    out.push_back({Rat(a, 1024), Rat(b, 1024)});
  }
  return IntervalSet::from_pieces(std::move(out));
}

void BM_SetUnion(benchmark::State& state) {
  std::mt19937_64 rng(1);
  IntervalSet a = bench_set(rng, static_cast<int>(state.range(0)));
  IntervalSet b = bench_set(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(set_union(a, b));
}
BENCHMARK(BM_SetUnion)->Arg(8)->Arg(64);

void BM_Eval(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto v = bench_valuation(rng, 8);
  IntervalSet s = bench_set(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(v.eval(s));
}
BENCHMARK(BM_Eval)->Arg(8)->Arg(64);

void BM_EqualPartition(benchmark::State& state) {
  std::mt19937_64 rng(3);
  auto v = bench_valuation(rng, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(equal_partition(v, IntervalSet::unit(), state.range(0)));
}
BENCHMARK(BM_EqualPartition)->Arg(16)->Arg(256)->Arg(2048);

void BM_PieceValueGroups(benchmark::State& state) {
  std::mt19937_64 rng(4);
  auto v = bench_valuation(rng, 8);
  auto probe = bench_valuation(rng, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        piece_value_groups(v, IntervalSet::unit(), state.range(0), probe));
}
BENCHMARK(BM_PieceValueGroups)->Arg(16)->Arg(256)->Arg(2048);

void BM_Dfd2Arrival(benchmark::State& state) {
  std::mt19937_64 rng(5);
  long n = state.range(0);
  std::vector<PiecewiseConstantValuation> vals;
  for (long i = 0; i < n; ++i) vals.push_back(bench_valuation(rng, 6));
  for (auto _ : state) {
    DfdState s;
    for (long i = 0; i < n; ++i) dfd2_arrival(s, vals[i]);
    benchmark::DoNotOptimize(s.step());
  }
}
BENCHMARK(BM_Dfd2Arrival)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_UdArrival(benchmark::State& state) {
  std::mt19937_64 rng(6);
  long n = state.range(0);
  std::vector<Rat> demands;
  for (long i = 0; i < n; ++i)
    demands.emplace_back(1 + static_cast<long>(rng() % 1000), 1000);
  for (auto _ : state) {
    UdAllocator alloc(n);
    UdState s;
    for (long i = 0; i < n; ++i) alloc.on_arrival(s, demands[i]);
    benchmark::DoNotOptimize(s.total_size);
  }
}
BENCHMARK(BM_UdArrival)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_AuditDfd2Run(benchmark::State& state) {
  Instance inst = random_instance(state.range(0), Family::pwc, 7);
  RunConfig config;
  config.algorithm = "dfd2";
  Trace trace = run(config, inst).trace;
  for (auto _ : state) benchmark::DoNotOptimize(audit_trace(trace));
}
BENCHMARK(BM_AuditDfd2Run)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
