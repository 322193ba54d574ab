#pragma once

#include <optional>
#include <vector>

#include "tvdiam/inference.hpp"
#include "tvdiam/junction_tree.hpp"
#include "tvdiam/model.hpp"
#include "tvdiam/variation.hpp"

namespace tvdiam {

class CliqueNotFound : public Error {
 public:
  explicit CliqueNotFound(const std::string& what)
      : Error("no such clique: " + what) {}
};

class TargetHasChildren : public Error {
 public:
  explicit TargetHasChildren(const std::string& name)
      : Error("target " + name +
              " has children; pass allow_non_leaf to analyze it anyway") {}
};

// d_plus * d_marginal: bound on the deviation of a pushed-through marginal
// when the shared CPT has diameter d_plus and the conditioning marginals
// differ by d_marginal in total variation.
double contraction_bound(double d_plus, double d_marginal);

// Separator chain between two cliques: the unique tree path, the separators
// along it, and the starred separators (each stripped of everything that
// reappears in a later separator of the same path).
//
// `clean` records whether consecutive separators are disjoint and none is
// empty. On clean chains the starred separators equal the separators and the
// chain factorization of the joint is exact; on overlapping chains the
// product of link diameters is still reported but the bound interpretation
// degrades, so every consumer surfaces the flag.
struct SeparatorChain {
  std::vector<int> clique_path;     // source first, target clique last
  std::vector<Clique> separators;   // one per path edge
  std::vector<Clique> starred;
  bool clean = true;
};

SeparatorChain separator_chain(const JunctionTree& jt, int source_clique,
                               int target_clique);

enum class ImpactMode { Exact, Bounded };

// One multiplicative factor of an impact chain: the transition from the
// previous starred separator to this one.
struct ChainLink {
  Clique separator;
  Clique starred;
  Clique given;                 // previous starred separator
  double diameter = 0.0;
  bool degenerate = false;      // empty starred side: 0 by convention
  bool fallback_to_one = false; // bounded mode had no sound CPT-sum bound
  bool had_uniform_rows = false;
  std::optional<ConditionalTable> table;  // exact mode only
};

// Impact of a source clique on a leaf target variable: the product of the
// chain-link diameters with the diameter of the target factor. In exact mode
// every factor is computed by inference; bounded mode replaces each link
// with min(1, sum of the original CPT diameters over the starred separator)
// where that bound is justified, and 1 where it is not.
struct ImpactChain {
  int source_clique = -1;
  int target_variable = -1;
  int target_clique = -1;
  ImpactMode mode = ImpactMode::Bounded;
  SeparatorChain chain;
  std::vector<ChainLink> links;   // chain.separators.size() - 1 entries
  double target_diameter = 0.0;   // d+ of the target factor
  double impact = 0.0;
  bool degenerate = false;        // any link collapsed to the 0 convention
};

ImpactChain impact(const BayesNet& net, const JunctionTree& jt,
                   int source_clique, int target_variable, ImpactMode mode,
                   bool allow_non_leaf = false,
                   std::size_t max_factor_states = 0);

// Impact of every clique on the target, indexed like jt.cliques. Along any
// path toward the target clique the impacts are non-increasing.
struct ImpactMap {
  int target_variable = -1;
  ImpactMode mode = ImpactMode::Bounded;
  std::vector<ImpactChain> impacts;
};

ImpactMap impact_map(const BayesNet& net, const JunctionTree& jt,
                     int target_variable, ImpactMode mode,
                     bool allow_non_leaf = false,
                     std::size_t max_factor_states = 0);

}  // namespace tvdiam
