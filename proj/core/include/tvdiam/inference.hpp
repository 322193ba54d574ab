#pragma once

#include <cstdint>
#include <vector>

#include "tvdiam/junction_tree.hpp"
#include "tvdiam/model.hpp"

namespace tvdiam {

class FactorLimitExceeded : public Error {
 public:
  FactorLimitExceeded(std::size_t states, std::size_t limit)
      : Error("elimination factor with " + std::to_string(states) +
              " states exceeds the limit of " + std::to_string(limit) +
              " (rerun with the limit lifted to force the query)") {}
};

// Non-negative table over an ordered variable scope, stored mixed-radix with
// the first scope variable most significant.
struct FactorTable {
  std::vector<int> scope;               // node indices
  std::vector<std::size_t> radices;     // cardinalities, aligned with scope
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// Exact marginal p(scope) by variable elimination with a min-fill order over
// the factor interaction graph. The result scope is sorted by declaration
// index. `max_factor_states` bounds the size of any intermediate factor
// (0 = unlimited).
FactorTable joint_marginal(const BayesNet& net, const std::vector<int>& scope,
                           std::size_t max_factor_states = 0);

// Stochastic matrix p(targets | givens): one row per given-assignment
// (mixed-radix over `givens` in the order passed), one column per
// target-assignment. Rows whose conditioning assignment has zero probability
// are filled uniformly and listed in uniform_rows.
struct ConditionalTable {
  std::vector<int> targets;
  std::vector<int> givens;
  Matrix matrix;
  std::vector<std::size_t> uniform_rows;
};

ConditionalTable conditional_table(const BayesNet& net,
                                   const std::vector<int>& targets,
                                   const std::vector<int>& givens,
                                   std::size_t max_factor_states = 0);

// Mutual information between two distinct variables, in nats, from the exact
// pairwise marginal (0 * ln 0 := 0).
double mutual_information(const BayesNet& net, int x, int y,
                          std::size_t max_factor_states = 0);

}  // namespace tvdiam
