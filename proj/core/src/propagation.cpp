#include "tvdiam/propagation.hpp"

#include <algorithm>

#include "tvdiam/parallel.hpp"

namespace tvdiam {

double contraction_bound(double d_plus, double d_marginal) {
  if (!(d_plus >= 0.0 && d_plus <= 1.0)) {
    throw OutOfRange("CPT diameter outside [0,1]");
  }
  if (!(d_marginal >= 0.0 && d_marginal <= 1.0)) {
    throw OutOfRange("marginal distance outside [0,1]");
  }
  return d_plus * d_marginal;
}

SeparatorChain separator_chain(const JunctionTree& jt, int source_clique,
                               int target_clique) {
  const int m = static_cast<int>(jt.cliques.size());
  if (source_clique < 0 || source_clique >= m) {
    throw CliqueNotFound("index " + std::to_string(source_clique));
  }
  if (target_clique < 0 || target_clique >= m) {
    throw CliqueNotFound("index " + std::to_string(target_clique));
  }

  SeparatorChain chain;
  chain.clique_path = jt.path(source_clique, target_clique);

  for (std::size_t k = 0; k + 1 < chain.clique_path.size(); ++k) {
    const Clique& a = jt.cliques[chain.clique_path[k]];
    const Clique& b = jt.cliques[chain.clique_path[k + 1]];
    Clique separator;
    for (int v : a) {
      if (b.count(v)) separator.insert(v);
    }
    chain.separators.push_back(std::move(separator));
  }

  chain.starred = chain.separators;
  for (std::size_t k = 0; k < chain.starred.size(); ++k) {
    for (std::size_t later = k + 1; later < chain.separators.size(); ++later) {
      for (int v : chain.separators[later]) chain.starred[k].erase(v);
    }
  }

  for (std::size_t k = 0; k < chain.separators.size(); ++k) {
    if (chain.separators[k].empty()) chain.clean = false;
    if (k + 1 < chain.separators.size()) {
      for (int v : chain.separators[k]) {
        if (chain.separators[k + 1].count(v)) chain.clean = false;
      }
    }
  }
  return chain;
}

namespace {

// True when every variable of `targets` has no descendant inside `given`,
// which is what licenses bounding the link by the sum of the original CPT
// diameters of the target variables.
bool cpt_sum_bound_applies(const Dag& dag, const Clique& targets,
                           const Clique& given) {
  std::vector<bool> reachable(dag.node_count, false);
  std::vector<int> stack(targets.begin(), targets.end());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int c : dag.children[v]) {
      if (!reachable[c]) {
        reachable[c] = true;
        stack.push_back(c);
      }
    }
  }
  for (int v : given) {
    if (reachable[v]) return false;
  }
  return true;
}

std::vector<int> sorted_vector(const Clique& c) {
  return std::vector<int>(c.begin(), c.end());
}

}  // namespace

ImpactChain impact(const BayesNet& net, const JunctionTree& jt,
                   int source_clique, int target_variable, ImpactMode mode,
                   bool allow_non_leaf, std::size_t max_factor_states) {
  if (target_variable < 0 ||
      target_variable >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("target variable out of range");
  }
  if (!net.child_indices(target_variable).empty() && !allow_non_leaf) {
    throw TargetHasChildren(net.variable(target_variable).name);
  }

  ImpactChain result;
  result.source_clique = source_clique;
  result.target_variable = target_variable;
  result.mode = mode;

  // The target may live in several cliques; its effective clique for this
  // chain is the first one on the tree path from the source. Truncating
  // there keeps the target variable out of every conditioning set and makes
  // the per-link factors well defined.
  {
    const int anchor = jt.clique_containing(target_variable);
    if (source_clique < 0 ||
        source_clique >= static_cast<int>(jt.cliques.size())) {
      throw CliqueNotFound("index " + std::to_string(source_clique));
    }
    const auto full_path = jt.path(source_clique, anchor);
    result.target_clique = anchor;
    for (int clique : full_path) {
      if (jt.cliques[clique].count(target_variable)) {
        result.target_clique = clique;
        break;
      }
    }
  }
  result.chain = separator_chain(jt, source_clique, result.target_clique);

  const std::size_t r = result.chain.separators.size();
  if (r == 0) {
    // Source clique contains the target: the bound is the diameter of the
    // target's own CPT.
    result.target_diameter = upper_diameter(net.cpt(target_variable)).value;
    result.impact = result.target_diameter;
    return result;
  }

  // Chain links: transitions between consecutive starred separators.
  for (std::size_t k = 1; k < r; ++k) {
    ChainLink link;
    link.separator = result.chain.separators[k];
    link.starred = result.chain.starred[k];
    link.given = result.chain.starred[k - 1];

    if (link.starred.empty() || link.given.empty()) {
      link.degenerate = true;
      link.diameter = 0.0;
      result.degenerate = true;
    } else if (mode == ImpactMode::Exact) {
      ConditionalTable table =
          conditional_table(net, sorted_vector(link.starred),
                            sorted_vector(link.given), max_factor_states);
      link.diameter = upper_diameter(table.matrix).value;
      link.had_uniform_rows = !table.uniform_rows.empty();
      link.table = std::move(table);
    } else {
      if (cpt_sum_bound_applies(net.dag(), link.starred, link.given)) {
        double sum = 0.0;
        for (int v : link.starred) {
          sum += upper_diameter(net.cpt(v)).value;
        }
        link.diameter = std::min(sum, 1.0);
      } else {
        // The separator conditions on descendants of the link variables; the
        // CPT-diameter sum is not a bound there, so fall back to the trivial
        // one.
        link.diameter = 1.0;
        link.fallback_to_one = true;
      }
    }
    result.links.push_back(std::move(link));
  }

  // Target factor: p(target | last starred separator).
  const Clique& last_starred = result.chain.starred[r - 1];
  if (last_starred.empty()) {
    result.degenerate = true;
    result.target_diameter = 0.0;
  } else if (mode == ImpactMode::Exact) {
    ConditionalTable table = conditional_table(
        net, {target_variable}, sorted_vector(last_starred), max_factor_states);
    result.target_diameter = upper_diameter(table.matrix).value;
  } else if (cpt_sum_bound_applies(net.dag(), {target_variable}, last_starred)) {
    // A leaf target has no descendants in the conditioning set, so its own
    // CPT diameter bounds the factor.
    result.target_diameter = upper_diameter(net.cpt(target_variable)).value;
  } else {
    result.target_diameter = 1.0;
  }

  double product = result.target_diameter;
  for (const ChainLink& link : result.links) product *= link.diameter;
  result.impact = std::clamp(product, 0.0, 1.0);
  return result;
}

ImpactMap impact_map(const BayesNet& net, const JunctionTree& jt,
                     int target_variable, ImpactMode mode, bool allow_non_leaf,
                     std::size_t max_factor_states) {
  ImpactMap map;
  map.target_variable = target_variable;
  map.mode = mode;
  map.impacts.resize(jt.cliques.size());
  parallel_for(jt.cliques.size(), [&](std::size_t c) {
    map.impacts[c] = impact(net, jt, static_cast<int>(c), target_variable,
                            mode, allow_non_leaf, max_factor_states);
  });
  return map;
}

}  // namespace tvdiam
