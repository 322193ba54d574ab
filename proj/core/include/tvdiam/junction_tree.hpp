#pragma once

#include <set>
#include <vector>

#include "tvdiam/graph.hpp"
#include "tvdiam/model.hpp"

namespace tvdiam {

using Clique = std::set<int>;

// Junction tree of a network: maximal cliques of the triangulated moral
// graph, ordered so the running intersection property holds. cliques[0]
// contains the first-declared root variable; for every i >= 1,
// separators[i] = cliques[i] n (cliques[0] u ... u cliques[i-1]) and is
// contained in cliques[tree_parent[i]].
struct JunctionTree {
  std::vector<Clique> cliques;
  std::vector<Clique> separators;   // separators[0] is empty by convention
  std::vector<int> tree_parent;     // tree_parent[0] == -1
  std::vector<int> elimination_order;

  UndirectedGraph moral;
  UndirectedGraph triangulated;

  // Index of the first clique (in RIP order) containing node v, or -1.
  int clique_containing(int v) const;

  // Index of the clique equal to `nodes`, or -1.
  int find_clique(const Clique& nodes) const;

  // Unique path between two cliques as a clique-index sequence.
  std::vector<int> path(int from, int to) const;
};

JunctionTree junction_tree(
    const BayesNet& net,
    TriangulationHeuristic heuristic = TriangulationHeuristic::MinFill);

// Recomputes every structural invariant from scratch: clique maximality and
// coverage of the moral edges, RIP, separator definitions, tree
// connectivity, and chordality of the triangulated graph. Throws Error with
// a description of the first violation.
void validate_junction_tree(const JunctionTree& jt);

}  // namespace tvdiam
