#pragma once

#include <set>
#include <vector>

#include "tvdiam/model.hpp"

namespace tvdiam {

// Simple undirected graph over node indices with symmetric adjacency sets.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int node_count) : adjacency_(node_count) {}

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  const std::set<int>& neighbors(int v) const { return adjacency_[v]; }
  std::size_t edge_count() const;

  // Edges as (min, max) pairs in ascending order.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::set<int>> adjacency_;
};

// Moral graph of a DAG: the undirected skeleton plus an edge between every
// pair of parents that share a child.
UndirectedGraph moralize(const Dag& dag);

enum class TriangulationHeuristic { MinFill, MinDegree };

struct Triangulation {
  UndirectedGraph graph;              // chordal supergraph
  std::vector<int> elimination_order; // order that produced it
  std::vector<std::pair<int, int>> fill_edges;
};

// Chordal supergraph via greedy elimination. Ties between candidate vertices
// are broken by declaration index, which keeps the output reproducible.
Triangulation triangulate(
    const UndirectedGraph& g,
    TriangulationHeuristic heuristic = TriangulationHeuristic::MinFill);

// Maximum-cardinality-search chordality test.
bool is_chordal(const UndirectedGraph& g);

}  // namespace tvdiam
