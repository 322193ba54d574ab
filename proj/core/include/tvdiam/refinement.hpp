#pragma once

#include <string>
#include <vector>

#include "tvdiam/model.hpp"
#include "tvdiam/variation.hpp"

namespace tvdiam {

class TooFewLevels : public Error {
 public:
  explicit TooFewLevels(const std::string& variable)
      : Error(variable + " needs at least 3 levels") {}
};

class NonConsecutiveOrdinal : public Error {
 public:
  NonConsecutiveOrdinal(const std::string& variable, const std::string& a,
                        const std::string& b)
      : Error("ordinal variable " + variable + ": levels " + a + " and " + b +
              " are not consecutive") {}
};

class BadContext : public Error {
 public:
  explicit BadContext(const std::string& what) : Error(what) {}
};

// Effect of merging two levels of a variable: the merged network plus the
// context-free diameter of every child CPT before and after the merge. The
// merged variable's own CPT sums the two columns; child CPTs average the two
// rows that differ only in the merged levels, which never increases a
// diameter.
struct ChildDiameterDelta {
  int child = -1;
  double before = 0.0;
  double after = 0.0;
};

struct AmalgamationReport {
  int variable = -1;
  std::string level_a;
  std::string level_b;
  std::string merged_level;            // "a+b"
  BayesNet network;
  std::vector<ChildDiameterDelta> children;  // declaration order
  double own_before = 0.0;             // diameter of the variable's own CPT
  double own_after = 0.0;
  std::string note;
};

AmalgamationReport amalgamate_levels(const BayesNet& net, int variable,
                                     const std::string& level_a,
                                     const std::string& level_b);

// Candidate merges ranked by how close the rows to be merged are: the score
// is the largest TV distance, over all children and parent contexts, between
// the two rows a merge would average. Ascending score; the post-merge child
// diameters are reported alongside so the caller can iterate until the drop
// from the original diameter becomes significant.
struct AmalgamationSuggestion {
  std::string level_a;
  std::string level_b;
  double score = 0.0;
  std::vector<ChildDiameterDelta> children;
};

std::vector<AmalgamationSuggestion> suggest_amalgamation(const BayesNet& net,
                                                         int variable);

// Index of context-specific independence: the upper diameter of the sub-CPT
// of node i where every parent except j is pinned to `context`.
double csi_index(const BayesNet& net, int node, int varying_parent,
                 const ParentAssignment& context);

// Index of partial independence: the lower diameter of the same sub-CPT,
// with the two closest levels of j (the candidate partial-independence
// domain) as witness.
struct PartialIndex {
  double value = 0.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};  // level indices of j
};

PartialIndex partial_index(const BayesNet& net, int node, int varying_parent,
                           const ParentAssignment& context);

// Batched scan of both indices over every (parent, context) pair of a node.
// A finding is reported when its CSI index or its partial index is at most
// `threshold`; results are sorted ascending by (partial, csi).
struct AsymmetryFinding {
  int node = -1;
  int varying_parent = -1;
  ParentAssignment context;
  double csi = 0.0;
  double partial = 0.0;
  std::pair<std::size_t, std::size_t> partial_witness{0, 0};
};

std::vector<AsymmetryFinding> asymmetry_scan(const BayesNet& net, int node,
                                             double threshold);

}  // namespace tvdiam
