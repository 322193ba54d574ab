#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tvdiam/inference.hpp"
#include "tvdiam/model.hpp"
#include "tvdiam/variation.hpp"

namespace tvdiam {

class NotAnEdge : public Error {
 public:
  NotAnEdge(const std::string& parent, const std::string& child)
      : Error("no edge " + parent + " -> " + child) {}
};

class WOutOfRange : public Error {
 public:
  explicit WOutOfRange(double w)
      : Error("trail weight " + std::to_string(w) + " outside (0,1]") {}
};

class MissingStrength : public Error {
 public:
  MissingStrength(const std::string& parent, const std::string& child)
      : Error("no strength supplied for edge " + parent + " -> " + child) {}
};

// Strength of an edge (j, i): the largest diameter of the sub-CPTs of i
// obtained by fixing all parents except j. Zero exactly when i is
// conditionally independent of j given its other parents.
struct EdgeStrength {
  Edge edge;
  double value = 0.0;
  ParentAssignment witness_context;             // maximizing context
  std::pair<std::size_t, std::size_t> witness_rows{0, 0};  // levels of j
};

EdgeStrength edge_strength(const BayesNet& net, Edge edge);

// Strengths of every edge, in declared edge order.
std::vector<EdgeStrength> all_edge_strengths(const BayesNet& net);

// Simple trail in the DAG skeleton. orientation[k] is true when the k-th
// step traverses its edge parent-to-child.
struct Trail {
  std::vector<int> nodes;
  std::vector<bool> forward;

  std::size_t length() const { return forward.size(); }
};

struct TrailCaps {
  std::size_t max_length = 12;
  std::size_t max_trails = 1'000'000;
};

// All active simple trails between two nodes under an empty evidence set:
// simple skeleton paths whose interior nodes are never head-to-head.
// Shortest trails first, then lexicographic by node sequence. If a cap was
// hit the enumeration is truncated and flagged rather than failing.
struct TrailEnumeration {
  std::vector<Trail> trails;
  bool truncated = false;
};

TrailEnumeration active_simple_trails(const Dag& dag, int from, int to,
                                      const TrailCaps& caps = {});

// Sum over active simple trails of w^length. `truncated` propagates from the
// trail enumeration.
struct InfluenceValue {
  double value = 0.0;
  bool truncated = false;
};

InfluenceValue dwi(const Dag& dag, int from, int to, double w,
                   const TrailCaps& caps = {});

// Sum over active simple trails of (product of edge strengths)^length.
// Strengths are pluggable: computed, elicited, or bootstrap frequencies.
using StrengthMap = std::map<Edge, double>;

InfluenceValue ewi(const Dag& dag, const StrengthMap& strengths, int from,
                   int to, const TrailCaps& caps = {});

StrengthMap strength_map(const std::vector<EdgeStrength>& strengths);

// Influence of every non-target node on a target, under several measures,
// with per-measure ranks (descending value, ties get the mean rank) and the
// Spearman correlation of each measure against mutual information.
struct InfluenceRow {
  int node = -1;
  double mi = 0.0;
  std::vector<double> dwi;  // one per requested w
  double ewi = 0.0;
  double rank_mi = 0.0;
  std::vector<double> rank_dwi;
  double rank_ewi = 0.0;
  bool truncated = false;
};

struct InfluenceRanking {
  int target = -1;
  std::vector<double> w_values;
  std::vector<InfluenceRow> rows;       // declaration order
  double spearman_mi = 1.0;             // MI against itself
  std::vector<double> spearman_dwi;
  double spearman_ewi = 0.0;
};

InfluenceRanking influence_ranking(const BayesNet& net, int target,
                                   const std::vector<double>& w_values,
                                   const TrailCaps& caps = {},
                                   std::size_t max_factor_states = 0,
                                   const StrengthMap* strengths = nullptr);

// Ranks for descending values; ties share the mean rank.
std::vector<double> descending_ranks(const std::vector<double>& values);

// Spearman correlation = Pearson correlation of the rank vectors. Returns 1
// for identical rank vectors and 0 when either side has zero variance.
double spearman(const std::vector<double>& ranks_a,
                const std::vector<double>& ranks_b);

}  // namespace tvdiam
