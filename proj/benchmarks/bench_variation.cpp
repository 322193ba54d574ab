#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tvdiam/model.hpp"
#include "tvdiam/variation.hpp"

namespace {

using namespace tvdiam;

std::vector<double> random_pmf(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = draw(rng) + 1e-4;
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

Matrix random_stochastic(std::mt19937_64& rng, std::size_t rows,
                         std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto p = random_pmf(rng, cols);
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = p[c];
  }
  return m;
}

void BM_TvDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto p = random_pmf(rng, state.range(0));
  const auto q = random_pmf(rng, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_distance_raw(p, q));
  }
}
BENCHMARK(BM_TvDistance)->Arg(4)->Arg(64)->Arg(1024);

void BM_UpperDiameter(benchmark::State& state) {
  std::mt19937_64 rng(2);
  Matrix m = random_stochastic(rng, state.range(0), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(upper_diameter(m));
  }
}
BENCHMARK(BM_UpperDiameter)->Arg(8)->Arg(64)->Arg(256);

void BM_TvDecompose(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto p = random_pmf(rng, state.range(0));
  const auto q = random_pmf(rng, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tv_decompose(p, q));
  }
}
BENCHMARK(BM_TvDecompose)->Arg(4)->Arg(64);

}  // namespace
