#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nimfrac/fractal.hpp"
#include "nimfrac/geometry.hpp"
#include "nimfrac/nim.hpp"

namespace {

using namespace nimfrac;

std::vector<Position> random_positions(std::size_t count, unsigned dimension, unsigned bits) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<Coord> coord(0, (Coord{1} << bits) - 1);
  std::vector<Position> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Coord> c(dimension);
    for (auto& x : c) x = coord(rng);
    out.emplace_back(std::move(c));
  }
  return out;
}

void BM_NimSum(benchmark::State& state) {
  const auto positions = random_positions(1024, static_cast<unsigned>(state.range(0)), 32);
  for (auto _ : state) {
    Coord acc = 0;
    for (const auto& p : positions) acc ^= nim_sum(p.coords());
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(positions.size()));
}
BENCHMARK(BM_NimSum)->Arg(3)->Arg(8)->Arg(64);

void BM_OptimalMove(benchmark::State& state) {
  const auto positions = random_positions(1024, 8, 32);
  for (auto _ : state) {
    for (const auto& p : positions) benchmark::DoNotOptimize(optimal_move(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(positions.size()));
}
BENCHMARK(BM_OptimalMove);

void BM_IterateRecursive(benchmark::State& state) {
  const IterationSpec spec{3, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(iterate_recursive(spec));
}
BENCHMARK(BM_IterateRecursive)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_GenerateFiltered(benchmark::State& state) {
  const IterationSpec spec{3, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(generate_filtered(spec));
}
BENCHMARK(BM_GenerateFiltered)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_StreamPoints(benchmark::State& state) {
  const IterationSpec spec{3, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) {
    Coord acc = 0;
    stream_points(spec, [&](std::span<const Coord> p) { acc += p[0]; });
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_StreamPoints)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_MembershipNimsum(benchmark::State& state) {
  const auto positions = random_positions(1024, 4, 20);
  for (auto _ : state) {
    for (const auto& p : positions) benchmark::DoNotOptimize(membership_nimsum(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(positions.size()));
}
BENCHMARK(BM_MembershipNimsum);

void BM_MembershipRecursive(benchmark::State& state) {
  const auto positions = random_positions(1024, 4, 20);
  for (auto _ : state) {
    for (const auto& p : positions) benchmark::DoNotOptimize(membership_recursive(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(positions.size()));
}
BENCHMARK(BM_MembershipRecursive);

void BM_Shadow(benchmark::State& state) {
  const IterationSpec spec{3, 6};
  const auto axis = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shadow(spec, axis));
}
BENCHMARK(BM_Shadow)->Arg(0)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
