#include "tvdiam/junction_tree.hpp"

#include <algorithm>

namespace tvdiam {

namespace {

std::size_t intersection_size(const Clique& a, const Clique& b) {
  std::size_t n = 0;
  for (int v : a) n += b.count(v);
  return n;
}

Clique intersect(const Clique& a, const Clique& b) {
  Clique out;
  for (int v : a) {
    if (b.count(v)) out.insert(v);
  }
  return out;
}

// Candidate cliques from an elimination order: each vertex together with its
// not-yet-eliminated neighbors at removal time. Non-maximal candidates are
// dropped; the survivors are exactly the maximal cliques of a chordal graph.
std::vector<Clique> maximal_cliques(const UndirectedGraph& g,
                                    const std::vector<int>& order) {
  std::vector<bool> eliminated(g.node_count(), false);
  std::vector<Clique> candidates;
  for (int v : order) {
    Clique c{v};
    for (int u : g.neighbors(v)) {
      if (!eliminated[u]) c.insert(u);
    }
    eliminated[v] = true;
    candidates.push_back(std::move(c));
  }

  std::vector<Clique> maximal;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (i == j) continue;
      if (std::includes(candidates[j].begin(), candidates[j].end(),
                        candidates[i].begin(), candidates[i].end())) {
        // Equal candidates keep only their first occurrence.
        if (candidates[i] != candidates[j] || j < i) {
          contained = true;
          break;
        }
      }
    }
    if (!contained) maximal.push_back(candidates[i]);
  }
  return maximal;
}

}  // namespace

int JunctionTree::clique_containing(int v) const {
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (cliques[i].count(v)) return static_cast<int>(i);
  }
  return -1;
}

int JunctionTree::find_clique(const Clique& nodes) const {
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (cliques[i] == nodes) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> JunctionTree::path(int from, int to) const {
  // Climb to the root from both ends and splice at the meeting point.
  auto ancestry = [&](int c) {
    std::vector<int> chain;
    for (int v = c; v >= 0; v = tree_parent[v]) chain.push_back(v);
    return chain;
  };
  std::vector<int> up_from = ancestry(from);
  std::vector<int> up_to = ancestry(to);

  std::vector<bool> on_from(cliques.size(), false);
  for (int v : up_from) on_from[v] = true;
  int meet = -1;
  for (int v : up_to) {
    if (on_from[v]) {
      meet = v;
      break;
    }
  }

  std::vector<int> result;
  for (int v : up_from) {
    result.push_back(v);
    if (v == meet) break;
  }
  std::vector<int> tail;
  for (int v : up_to) {
    if (v == meet) break;
    tail.push_back(v);
  }
  std::reverse(tail.begin(), tail.end());
  result.insert(result.end(), tail.begin(), tail.end());
  return result;
}

JunctionTree junction_tree(const BayesNet& net,
                           TriangulationHeuristic heuristic) {
  JunctionTree jt;
  jt.moral = moralize(net.dag());
  Triangulation tri = triangulate(jt.moral, heuristic);
  jt.triangulated = tri.graph;
  jt.elimination_order = tri.elimination_order;

  std::vector<Clique> cliques = maximal_cliques(tri.graph, tri.elimination_order);

  // Root clique: the one containing the first-declared root variable.
  int root_var = 0;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (net.is_root(static_cast<int>(i))) {
      root_var = static_cast<int>(i);
      break;
    }
  }
  int root_clique = 0;
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (cliques[i].count(root_var)) {
      root_clique = static_cast<int>(i);
      break;
    }
  }

  // Prim's algorithm on separator size builds a maximum-weight spanning tree
  // of the clique graph, which for a chordal graph is a junction tree. The
  // placement order doubles as the RIP ordering.
  const std::size_t m = cliques.size();
  std::vector<bool> placed(m, false);
  std::vector<int> placement;          // original clique index per RIP slot
  std::vector<int> parent_slot(m, -1); // RIP slot of the attachment clique

  placement.push_back(root_clique);
  placed[root_clique] = true;

  while (placement.size() < m) {
    int best_candidate = -1;
    int best_attach = -1;
    std::size_t best_weight = 0;
    for (std::size_t c = 0; c < m; ++c) {
      if (placed[c]) continue;
      for (std::size_t slot = 0; slot < placement.size(); ++slot) {
        const std::size_t w =
            intersection_size(cliques[c], cliques[placement[slot]]);
        if (best_candidate < 0 || w > best_weight) {
          best_candidate = static_cast<int>(c);
          best_attach = static_cast<int>(slot);
          best_weight = w;
        }
      }
    }
    parent_slot[best_candidate] = best_attach;
    placed[best_candidate] = true;
    placement.push_back(best_candidate);
  }

  jt.cliques.reserve(m);
  jt.separators.resize(m);
  jt.tree_parent.assign(m, -1);
  std::vector<int> slot_of(m, -1);
  for (std::size_t slot = 0; slot < m; ++slot) {
    slot_of[placement[slot]] = static_cast<int>(slot);
    jt.cliques.push_back(cliques[placement[slot]]);
  }
  for (std::size_t slot = 1; slot < m; ++slot) {
    const int original = placement[slot];
    jt.tree_parent[slot] = parent_slot[original];
    jt.separators[slot] =
        intersect(jt.cliques[slot], jt.cliques[parent_slot[original]]);
  }
  return jt;
}

void validate_junction_tree(const JunctionTree& jt) {
  const std::size_t m = jt.cliques.size();
  if (m == 0) throw Error("junction tree has no cliques");

  if (!is_chordal(jt.triangulated)) {
    throw Error("triangulated graph is not chordal");
  }

  // Every clique must be complete and maximal in the triangulated graph.
  for (std::size_t i = 0; i < m; ++i) {
    for (int a : jt.cliques[i]) {
      for (int b : jt.cliques[i]) {
        if (a < b && !jt.triangulated.has_edge(a, b)) {
          throw Error("clique " + std::to_string(i) + " is not complete");
        }
      }
    }
    for (int v = 0; v < jt.triangulated.node_count(); ++v) {
      if (jt.cliques[i].count(v)) continue;
      bool adjacent_to_all = true;
      for (int a : jt.cliques[i]) {
        if (!jt.triangulated.has_edge(a, v)) {
          adjacent_to_all = false;
          break;
        }
      }
      if (adjacent_to_all) {
        throw Error("clique " + std::to_string(i) + " is not maximal");
      }
    }
  }

  // The clique family covers every edge of the moral graph.
  for (auto [a, b] : jt.moral.edges()) {
    bool covered = false;
    for (const Clique& c : jt.cliques) {
      if (c.count(a) && c.count(b)) {
        covered = true;
        break;
      }
    }
    if (!covered) throw Error("moral edge not covered by any clique");
  }

  // RIP: each separator equals the intersection with all earlier cliques and
  // lies inside the parent clique.
  Clique seen = jt.cliques[0];
  for (std::size_t i = 1; i < m; ++i) {
    Clique expected = intersect(jt.cliques[i], seen);
    if (expected != jt.separators[i]) {
      throw Error("separator " + std::to_string(i) + " mismatch");
    }
    const int parent = jt.tree_parent[i];
    if (parent < 0 || parent >= static_cast<int>(i)) {
      throw Error("tree parent of clique " + std::to_string(i) +
                  " is not an earlier clique");
    }
    if (!std::includes(jt.cliques[parent].begin(), jt.cliques[parent].end(),
                       jt.separators[i].begin(), jt.separators[i].end())) {
      throw Error("separator " + std::to_string(i) +
                  " not contained in parent clique");
    }
    seen.insert(jt.cliques[i].begin(), jt.cliques[i].end());
  }
}

}  // namespace tvdiam
