#include <benchmark/benchmark.h>

#include <random>

#include "steklov/bounds.hpp"
#include "steklov/fem.hpp"
#include "steklov/inverse.hpp"
#include "steklov/quasi_spectrum.hpp"
#include "steklov/trig_poly.hpp"

using namespace steklov;

namespace {

// deterministic convex n-gon: perturbed regular polygon
BoundaryData sample_polygon(std::size_t n) {
  ConvexPolygon poly;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
    // amplitude shrinks with n to keep the perturbed polygon convex
    const double r = 1.0 + (1.5 / static_cast<double>(n * n)) *
                               std::sin(3.7 * static_cast<double>(i) + 0.5);
    poly.vertices.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return extract_boundary_data(poly);
}

void BM_BuildCharpoly(benchmark::State& state) {
  const auto d = sample_polygon(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_charpoly(d));
}
BENCHMARK(BM_BuildCharpoly)->DenseRange(4, 16, 2);

void BM_FindRoots(benchmark::State& state) {
  const auto p = build_charpoly(sample_polygon(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p, 20.0));
}
BENCHMARK(BM_FindRoots)->DenseRange(4, 10, 2);

void BM_SteklovSolve(benchmark::State& state) {
  const auto d = sample_polygon(6);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(steklov_spectrum(d, h, 5));
}
BENCHMARK(BM_SteklovSolve)->Arg(8)->Arg(16)->Arg(32);

void BM_Enumerate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto d = sample_polygon(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_admissible_candidates(d));
}
BENCHMARK(BM_Enumerate)->Arg(5)->Arg(6)->Arg(7);

void BM_BoundsForPolygon(benchmark::State& state) {
  const auto d = sample_polygon(8);
  const auto poly = build_polygon(d);
  for (auto _ : state) benchmark::DoNotOptimize(bounds_for_polygon(poly, 2));
}
BENCHMARK(BM_BoundsForPolygon);

}  // namespace

BENCHMARK_MAIN();
