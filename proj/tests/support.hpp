// Shared test support: canonical fixtures, random generators, and the
// brute-force oracles the property suites compare against. Everything here
// is deliberately independent of the library's inference and trail code: the
// oracle enumerates full joints directly from the CPT entries.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tvdiam/model.hpp"

namespace testsupport {

using namespace tvdiam;

// --- fixtures ---------------------------------------------------------------

// The canonical eight-node chest-clinic network.
inline BayesNet make_asia() {
  auto binary = [](const std::string& name) {
    return DiscreteVariable{name, {"yes", "no"}, false};
  };
  DiscreteVariable asia = binary("asia");
  DiscreteVariable tub = binary("tub");
  DiscreteVariable smoke = binary("smoke");
  DiscreteVariable lung = binary("lung");
  DiscreteVariable bronc = binary("bronc");
  DiscreteVariable either = binary("either");
  DiscreteVariable xray = binary("xray");
  DiscreteVariable dysp = binary("dysp");

  std::vector<Cpt> cpts;
  cpts.emplace_back(asia, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.01, 0.99}}));
  cpts.emplace_back(tub, std::vector<DiscreteVariable>{asia},
                    Matrix::from_rows({{0.05, 0.95}, {0.01, 0.99}}));
  cpts.emplace_back(smoke, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.5, 0.5}}));
  cpts.emplace_back(lung, std::vector<DiscreteVariable>{smoke},
                    Matrix::from_rows({{0.1, 0.9}, {0.01, 0.99}}));
  cpts.emplace_back(bronc, std::vector<DiscreteVariable>{smoke},
                    Matrix::from_rows({{0.6, 0.4}, {0.3, 0.7}}));
  cpts.emplace_back(either, std::vector<DiscreteVariable>{lung, tub},
                    Matrix::from_rows({{1.0, 0.0},
                                       {1.0, 0.0},
                                       {1.0, 0.0},
                                       {0.0, 1.0}}));
  cpts.emplace_back(xray, std::vector<DiscreteVariable>{either},
                    Matrix::from_rows({{0.98, 0.02}, {0.05, 0.95}}));
  cpts.emplace_back(dysp, std::vector<DiscreteVariable>{bronc, either},
                    Matrix::from_rows({{0.9, 0.1},
                                       {0.8, 0.2},
                                       {0.7, 0.3},
                                       {0.1, 0.9}}));

  std::vector<Edge> edges = {{0, 1}, {2, 3}, {2, 4}, {3, 5},
                             {1, 5}, {5, 6}, {4, 7}, {5, 7}};
  return build_network({asia, tub, smoke, lung, bronc, either, xray, dysp},
                       edges, std::move(cpts));
}

// The published CPT of a binary growth indicator with a ternary ordinal
// employee-count parent and a binary innovation parent; priors are uniform
// placeholders (the analyses under test are CPT-local).
inline BayesNet make_growth() {
  DiscreteVariable emp{"EMP12", {"10-49", "50-249", ">250"}, true};
  DiscreteVariable inpd{"INPD", {"yes", "no"}, false};
  DiscreteVariable growth{"GROWTH", {"yes", "no"}, false};

  std::vector<Cpt> cpts;
  cpts.emplace_back(emp, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.34, 0.33, 0.33}}));
  cpts.emplace_back(inpd, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.5, 0.5}}));
  cpts.emplace_back(growth, std::vector<DiscreteVariable>{emp, inpd},
                    Matrix::from_rows({{0.563, 0.437},
                                       {0.469, 0.531},
                                       {0.608, 0.392},
                                       {0.557, 0.443},
                                       {0.636, 0.364},
                                       {0.590, 0.410}}));
  return build_network({emp, inpd, growth}, {{0, 2}, {1, 2}}, std::move(cpts));
}

// Three ternary variables; the CPT of X_i embeds one context-specific and
// one partial independence. The (high, medium) row is the literal published
// one, which sums to 1.1; the raised tolerance keeps it unnormalized so the
// published index values reproduce exactly.
inline BayesNet make_table6() {
  DiscreteVariable xj{"X_j", {"high", "medium", "low"}, false};
  DiscreteVariable xk{"X_k", {"high", "medium", "low"}, false};
  DiscreteVariable xi{"X_i", {"high", "medium", "low"}, false};

  std::vector<Cpt> cpts;
  cpts.emplace_back(xj, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.34, 0.33, 0.33}}));
  cpts.emplace_back(xk, std::vector<DiscreteVariable>{},
                    Matrix::from_rows({{0.34, 0.33, 0.33}}));
  cpts.emplace_back(xi, std::vector<DiscreteVariable>{xj, xk},
                    Matrix::from_rows({{0.5, 0.3, 0.2},
                                       {0.4, 0.2, 0.5},
                                       {0.3, 0.1, 0.6},
                                       {0.5, 0.3, 0.2},
                                       {0.3, 0.5, 0.2},
                                       {0.2, 0.4, 0.4},
                                       {0.5, 0.3, 0.2},
                                       {0.2, 0.2, 0.6},
                                       {0.2, 0.2, 0.6}}),
                    /*row_tolerance=*/0.2);
  return build_network({xj, xk, xi}, {{0, 2}, {1, 2}}, std::move(cpts));
}

// --- random generators -------------------------------------------------------

inline std::vector<double> random_pmf(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = exp_draw(rng) + 1e-4;  // keep supports overlapping
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

inline Matrix random_stochastic(std::mt19937_64& rng, std::size_t rows,
                                std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto p = random_pmf(rng, cols);
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = p[c];
  }
  return m;
}

struct RandomNetOptions {
  int nodes = 6;
  std::size_t min_levels = 2;
  std::size_t max_levels = 3;
  double edge_probability = 0.4;
  std::size_t max_parents = 3;
};

inline BayesNet random_net(std::mt19937_64& rng, const RandomNetOptions& opt) {
  std::uniform_int_distribution<std::size_t> levels_draw(opt.min_levels,
                                                         opt.max_levels);
  std::bernoulli_distribution edge_draw(opt.edge_probability);

  std::vector<DiscreteVariable> variables;
  for (int i = 0; i < opt.nodes; ++i) {
    DiscreteVariable v;
    v.name = "v" + std::to_string(i);
    const std::size_t k = levels_draw(rng);
    for (std::size_t l = 0; l < k; ++l) v.levels.push_back("l" + std::to_string(l));
    variables.push_back(std::move(v));
  }

  std::vector<Edge> edges;
  std::vector<std::vector<int>> parents(opt.nodes);
  for (int child = 1; child < opt.nodes; ++child) {
    for (int parent = 0; parent < child; ++parent) {
      if (parents[child].size() >= opt.max_parents) break;
      if (edge_draw(rng)) {
        parents[child].push_back(parent);
        edges.push_back({parent, child});
      }
    }
  }

  std::vector<Cpt> cpts;
  for (int i = 0; i < opt.nodes; ++i) {
    std::vector<DiscreteVariable> ps;
    std::size_t rows = 1;
    for (int p : parents[i]) {
      ps.push_back(variables[p]);
      rows *= variables[p].cardinality();
    }
    cpts.emplace_back(variables[i], std::move(ps),
                      random_stochastic(rng, rows, variables[i].cardinality()));
  }
  return build_network(variables, edges, std::move(cpts));
}

// --- enumeration oracle --------------------------------------------------------

// Full joint over all variables in declaration order, indexed mixed-radix
// (first variable most significant), straight from the factorization.
inline std::vector<double> enumerate_joint(const BayesNet& net) {
  const auto radices = net.cardinalities();
  const std::size_t states = mixed_radix_capacity(radices);
  std::vector<double> joint(states, 1.0);
  for (std::size_t s = 0; s < states; ++s) {
    const auto digits = mixed_radix_decode(s, radices);
    double p = 1.0;
    for (std::size_t i = 0; i < net.node_count(); ++i) {
      const Cpt& cpt = net.cpt(static_cast<int>(i));
      ParentAssignment assignment;
      for (int parent : net.parent_indices(static_cast<int>(i))) {
        assignment[net.variable(parent).name] =
            static_cast<int>(digits[parent]);
      }
      p *= cpt.table().at(row_index(cpt, assignment), digits[i]);
    }
    joint[s] = p;
  }
  return joint;
}

// Marginal over `scope` (ascending node order), from a precomputed joint.
inline std::vector<double> oracle_marginal(const BayesNet& net,
                                           const std::vector<double>& joint,
                                           std::vector<int> scope) {
  std::sort(scope.begin(), scope.end());
  const auto radices = net.cardinalities();
  std::vector<std::size_t> scope_radices;
  for (int v : scope) scope_radices.push_back(radices[v]);
  std::vector<double> out(mixed_radix_capacity(scope_radices), 0.0);
  for (std::size_t s = 0; s < joint.size(); ++s) {
    const auto digits = mixed_radix_decode(s, radices);
    std::vector<std::size_t> key;
    for (int v : scope) key.push_back(digits[v]);
    out[mixed_radix_encode(key, scope_radices)] += joint[s];
  }
  return out;
}

inline double oracle_mutual_information(const BayesNet& net, int x, int y) {
  const auto joint_full = enumerate_joint(net);
  std::vector<int> scope{std::min(x, y), std::max(x, y)};
  const auto joint = oracle_marginal(net, joint_full, scope);
  const std::size_t nx = net.variable(scope[0]).cardinality();
  const std::size_t ny = net.variable(scope[1]).cardinality();
  std::vector<double> mx(nx, 0.0), my(ny, 0.0);
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      mx[a] += joint[a * ny + b];
      my[b] += joint[a * ny + b];
    }
  }
  double mi = 0.0;
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const double v = joint[a * ny + b];
      if (v > 0.0) mi += v * std::log(v / (mx[a] * my[b]));
    }
  }
  return mi;
}

// --- brute-force trail oracle ---------------------------------------------------

// Every simple skeleton path, found by plain DFS with no pruning, then
// filtered by the interior-collider rule.
inline std::vector<std::vector<int>> oracle_active_trails(const Dag& dag,
                                                          int from, int to) {
  std::vector<std::set<int>> adjacency(dag.node_count);
  for (const Edge& e : dag.edges) {
    adjacency[e.parent].insert(e.child);
    adjacency[e.child].insert(e.parent);
  }

  std::vector<std::vector<int>> paths;
  std::vector<int> current{from};
  std::vector<bool> used(dag.node_count, false);
  used[from] = true;

  std::function<void()> dfs = [&]() {
    const int v = current.back();
    if (v == to) {
      paths.push_back(current);
      return;
    }
    for (int next : adjacency[v]) {
      if (used[next]) continue;
      used[next] = true;
      current.push_back(next);
      dfs();
      current.pop_back();
      used[next] = false;
    }
  };
  dfs();

  std::vector<std::vector<int>> active;
  for (const auto& path : paths) {
    bool blocked = false;
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      const bool in_left = dag.has_edge(path[k - 1], path[k]);
      const bool in_right = dag.has_edge(path[k + 1], path[k]);
      if (in_left && in_right) {  // head-to-head, no evidence: blocked
        blocked = true;
        break;
      }
    }
    if (!blocked) active.push_back(path);
  }
  return active;
}

}  // namespace testsupport
