#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "tvdiam/bif.hpp"
#include "tvdiam/inference.hpp"
#include "tvdiam/junction_tree.hpp"
#include "tvdiam/propagation.hpp"
#include "tvdiam/refinement.hpp"
#include "tvdiam/sensitivity.hpp"

namespace {

using namespace tvdiam;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string& asia_text() {
  static const std::string text =
      slurp(std::string(TVDIAM_DATA_DIR) + "/asia.bif");
  return text;
}

const BayesNet& asia() {
  static const BayesNet net = parse_bif(asia_text()).net;
  return net;
}

const BayesNet& growth() {
  static const BayesNet net =
      parse_bif(slurp(std::string(TVDIAM_DATA_DIR) + "/istat_growth.bif")).net;
  return net;
}

void BM_ParseBif(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_bif(asia_text()));
  }
}
BENCHMARK(BM_ParseBif);

void BM_JunctionTree(benchmark::State& state) {
  const BayesNet& net = asia();
  for (auto _ : state) {
    benchmark::DoNotOptimize(junction_tree(net));
  }
}
BENCHMARK(BM_JunctionTree);

void BM_JointMarginal(benchmark::State& state) {
  const BayesNet& net = asia();
  const std::vector<int> scope{net.index_of("dysp"), net.index_of("smoke")};
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_marginal(net, scope));
  }
}
BENCHMARK(BM_JointMarginal);

void BM_MutualInformation(benchmark::State& state) {
  const BayesNet& net = asia();
  const int smoke = net.index_of("smoke");
  const int lung = net.index_of("lung");
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_information(net, smoke, lung));
  }
}
BENCHMARK(BM_MutualInformation);

void BM_AllEdgeStrengths(benchmark::State& state) {
  const BayesNet& net = asia();
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_edge_strengths(net));
  }
}
BENCHMARK(BM_AllEdgeStrengths);

void BM_ActiveTrails(benchmark::State& state) {
  const BayesNet& net = asia();
  const int from = net.index_of("asia");
  const int to = net.index_of("dysp");
  for (auto _ : state) {
    benchmark::DoNotOptimize(active_simple_trails(net.dag(), from, to));
  }
}
BENCHMARK(BM_ActiveTrails);

void BM_ImpactMapBounded(benchmark::State& state) {
  const BayesNet& net = asia();
  JunctionTree jt = junction_tree(net);
  const int xray = net.index_of("xray");
  for (auto _ : state) {
    benchmark::DoNotOptimize(impact_map(net, jt, xray, ImpactMode::Bounded));
  }
}
BENCHMARK(BM_ImpactMapBounded);

void BM_ImpactMapExact(benchmark::State& state) {
  const BayesNet& net = asia();
  JunctionTree jt = junction_tree(net);
  const int xray = net.index_of("xray");
  for (auto _ : state) {
    benchmark::DoNotOptimize(impact_map(net, jt, xray, ImpactMode::Exact));
  }
}
BENCHMARK(BM_ImpactMapExact);

void BM_SuggestAmalgamation(benchmark::State& state) {
  const BayesNet& net = growth();
  const int emp = net.index_of("EMP12");
  for (auto _ : state) {
    benchmark::DoNotOptimize(suggest_amalgamation(net, emp));
  }
}
BENCHMARK(BM_SuggestAmalgamation);

}  // namespace

BENCHMARK_MAIN();
