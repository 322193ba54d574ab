#include "tvdiam/graph.hpp"

#include <algorithm>
#include <limits>

namespace tvdiam {

void UndirectedGraph::add_edge(int a, int b) {
  if (a == b) throw Error("self-loop in undirected graph");
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

bool UndirectedGraph::has_edge(int a, int b) const {
  return adjacency_[a].count(b) > 0;
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < node_count(); ++a) {
    for (int b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

UndirectedGraph moralize(const Dag& dag) {
  UndirectedGraph g(dag.node_count);
  for (const Edge& e : dag.edges) g.add_edge(e.parent, e.child);
  for (int child = 0; child < dag.node_count; ++child) {
    const auto& parents = dag.parents[child];
    for (std::size_t i = 0; i < parents.size(); ++i) {
      for (std::size_t j = i + 1; j < parents.size(); ++j) {
        if (parents[i] != parents[j]) g.add_edge(parents[i], parents[j]);
      }
    }
  }
  return g;
}

namespace {

// Fill-in count of v among its not-yet-eliminated neighbors.
int fill_count(const UndirectedGraph& g, int v,
               const std::vector<bool>& eliminated) {
  std::vector<int> live;
  for (int u : g.neighbors(v)) {
    if (!eliminated[u]) live.push_back(u);
  }
  int missing = 0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      if (!g.has_edge(live[i], live[j])) ++missing;
    }
  }
  return missing;
}

int live_degree(const UndirectedGraph& g, int v,
                const std::vector<bool>& eliminated) {
  int degree = 0;
  for (int u : g.neighbors(v)) {
    if (!eliminated[u]) ++degree;
  }
  return degree;
}

}  // namespace

Triangulation triangulate(const UndirectedGraph& g,
                          TriangulationHeuristic heuristic) {
  Triangulation result;
  result.graph = g;
  const int n = g.node_count();
  std::vector<bool> eliminated(n, false);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    int best_score = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      const int score = heuristic == TriangulationHeuristic::MinFill
                            ? fill_count(result.graph, v, eliminated)
                            : live_degree(result.graph, v, eliminated);
      if (score < best_score) {
        best_score = score;
        best = v;
      }
    }

    std::vector<int> live;
    for (int u : result.graph.neighbors(best)) {
      if (!eliminated[u]) live.push_back(u);
    }
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        if (!result.graph.has_edge(live[i], live[j])) {
          result.graph.add_edge(live[i], live[j]);
          result.fill_edges.emplace_back(std::min(live[i], live[j]),
                                         std::max(live[i], live[j]));
        }
      }
    }
    eliminated[best] = true;
    result.elimination_order.push_back(best);
  }
  return result;
}

bool is_chordal(const UndirectedGraph& g) {
  const int n = g.node_count();
  if (n == 0) return true;

  // Maximum cardinality search; the reverse visit order is a perfect
  // elimination ordering iff the graph is chordal.
  std::vector<int> weight(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    }
    visited[best] = true;
    order.push_back(best);
    for (int u : g.neighbors(best)) {
      if (!visited[u]) ++weight[u];
    }
  }

  std::vector<int> position(n, 0);
  for (int i = 0; i < n; ++i) position[order[i]] = i;

  // Elimination order is the reverse of the MCS order: check that each
  // vertex's earlier-visited neighbors form a clique via the standard
  // "parent" shortcut.
  for (int i = n - 1; i >= 0; --i) {
    const int v = order[i];
    std::vector<int> earlier;
    for (int u : g.neighbors(v)) {
      if (position[u] < i) earlier.push_back(u);
    }
    if (earlier.empty()) continue;
    int parent = earlier.front();
    for (int u : earlier) {
      if (position[u] > position[parent]) parent = u;
    }
    for (int u : earlier) {
      if (u != parent && !g.has_edge(u, parent)) return false;
    }
  }
  return true;
}

}  // namespace tvdiam
