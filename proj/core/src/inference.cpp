#include "tvdiam/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tvdiam {

namespace {

// Multiply a list of factors into one table over the sorted union of their
// scopes, then (optionally) sum out `eliminate`.
FactorTable combine(const std::vector<const FactorTable*>& factors,
                    int eliminate, std::size_t max_factor_states) {
  std::set<int> scope_set;
  std::vector<std::size_t> radix_of;
  for (const FactorTable* f : factors) {
    for (std::size_t i = 0; i < f->scope.size(); ++i) {
      scope_set.insert(f->scope[i]);
    }
  }

  FactorTable product;
  product.scope.assign(scope_set.begin(), scope_set.end());
  for (int v : product.scope) {
    std::size_t radix = 0;
    for (const FactorTable* f : factors) {
      for (std::size_t i = 0; i < f->scope.size(); ++i) {
        if (f->scope[i] == v) radix = f->radices[i];
      }
    }
    product.radices.push_back(radix);
  }

  const std::size_t states = mixed_radix_capacity(product.radices);
  if (max_factor_states && states > max_factor_states) {
    throw FactorLimitExceeded(states, max_factor_states);
  }
  product.values.assign(states, 1.0);

  // Position of each product-scope variable within each factor (-1 if absent).
  std::vector<std::vector<int>> slot(factors.size(),
                                     std::vector<int>(product.scope.size(), -1));
  for (std::size_t k = 0; k < factors.size(); ++k) {
    for (std::size_t i = 0; i < product.scope.size(); ++i) {
      for (std::size_t j = 0; j < factors[k]->scope.size(); ++j) {
        if (factors[k]->scope[j] == product.scope[i]) {
          slot[k][i] = static_cast<int>(j);
        }
      }
    }
  }

  std::vector<std::size_t> digits(product.scope.size(), 0);
  std::vector<std::size_t> fdigits;
  for (std::size_t idx = 0; idx < states; ++idx) {
    double value = 1.0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      fdigits.assign(factors[k]->scope.size(), 0);
      for (std::size_t i = 0; i < product.scope.size(); ++i) {
        if (slot[k][i] >= 0) fdigits[slot[k][i]] = digits[i];
      }
      value *= factors[k]->values[mixed_radix_encode(fdigits, factors[k]->radices)];
    }
    product.values[idx] = value;

    // Odometer increment (last digit fastest).
    for (std::size_t i = product.scope.size(); i-- > 0;) {
      if (++digits[i] < product.radices[i]) break;
      digits[i] = 0;
    }
  }

  if (eliminate < 0) return product;

  int pos = -1;
  for (std::size_t i = 0; i < product.scope.size(); ++i) {
    if (product.scope[i] == eliminate) pos = static_cast<int>(i);
  }

  FactorTable reduced;
  for (std::size_t i = 0; i < product.scope.size(); ++i) {
    if (static_cast<int>(i) == pos) continue;
    reduced.scope.push_back(product.scope[i]);
    reduced.radices.push_back(product.radices[i]);
  }
  reduced.values.assign(mixed_radix_capacity(reduced.radices), 0.0);

  std::vector<std::size_t> rdigits;
  digits.assign(product.scope.size(), 0);
  for (std::size_t idx = 0; idx < states; ++idx) {
    rdigits.clear();
    for (std::size_t i = 0; i < product.scope.size(); ++i) {
      if (static_cast<int>(i) != pos) rdigits.push_back(digits[i]);
    }
    reduced.values[mixed_radix_encode(rdigits, reduced.radices)] +=
        product.values[idx];
    for (std::size_t i = product.scope.size(); i-- > 0;) {
      if (++digits[i] < product.radices[i]) break;
      digits[i] = 0;
    }
  }
  return reduced;
}

FactorTable cpt_factor(const BayesNet& net, int node) {
  const Cpt& cpt = net.cpt(node);
  FactorTable f;
  for (int p : net.parent_indices(node)) {
    f.scope.push_back(p);
    f.radices.push_back(net.variable(p).cardinality());
  }
  f.scope.push_back(node);
  f.radices.push_back(net.variable(node).cardinality());
  // Row-major CPT layout is exactly (parents..., child) mixed-radix.
  f.values = cpt.table().values();
  return f;
}

// Next variable to eliminate: fewest fill-in edges in the factor interaction
// graph, ties by declaration index.
int pick_min_fill(const std::vector<FactorTable>& factors,
                  const std::set<int>& pending) {
  int best = -1;
  int best_fill = -1;
  for (int v : pending) {
    std::set<int> neighborhood;
    for (const FactorTable& f : factors) {
      if (std::find(f.scope.begin(), f.scope.end(), v) == f.scope.end()) {
        continue;
      }
      for (int u : f.scope) {
        if (u != v && pending.count(u)) neighborhood.insert(u);
      }
    }
    // Count missing pairwise links among the neighbors.
    std::vector<int> around(neighborhood.begin(), neighborhood.end());
    int fill = 0;
    for (std::size_t i = 0; i < around.size(); ++i) {
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        bool linked = false;
        for (const FactorTable& f : factors) {
          const bool has_a = std::find(f.scope.begin(), f.scope.end(),
                                       around[i]) != f.scope.end();
          const bool has_b = std::find(f.scope.begin(), f.scope.end(),
                                       around[j]) != f.scope.end();
          if (has_a && has_b) {
            linked = true;
            break;
          }
        }
        if (!linked) ++fill;
      }
    }
    if (best < 0 || fill < best_fill) {
      best = v;
      best_fill = fill;
    }
  }
  return best;
}

}  // namespace

FactorTable joint_marginal(const BayesNet& net, const std::vector<int>& scope,
                           std::size_t max_factor_states) {
  std::set<int> keep(scope.begin(), scope.end());
  for (int v : scope) {
    if (v < 0 || v >= static_cast<int>(net.node_count())) {
      throw InvalidQuery("scope variable out of range");
    }
  }

  std::vector<FactorTable> factors;
  factors.reserve(net.node_count());
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    factors.push_back(cpt_factor(net, static_cast<int>(i)));
  }

  std::set<int> pending;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (!keep.count(static_cast<int>(i))) pending.insert(static_cast<int>(i));
  }

  while (!pending.empty()) {
    const int v = pick_min_fill(factors, pending);
    pending.erase(v);

    std::vector<const FactorTable*> involved;
    std::vector<FactorTable> rest;
    for (FactorTable& f : factors) {
      if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end()) {
        involved.push_back(&f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(combine(involved, v, max_factor_states));
    factors = std::move(rest);
  }

  std::vector<const FactorTable*> remaining;
  for (const FactorTable& f : factors) remaining.push_back(&f);
  return combine(remaining, -1, max_factor_states);
}

ConditionalTable conditional_table(const BayesNet& net,
                                   const std::vector<int>& targets,
                                   const std::vector<int>& givens,
                                   std::size_t max_factor_states) {
  for (int t : targets) {
    for (int g : givens) {
      if (t == g) throw InvalidQuery("targets and givens overlap");
    }
  }
  if (targets.empty()) throw InvalidQuery("no target variables");

  std::vector<int> scope = targets;
  scope.insert(scope.end(), givens.begin(), givens.end());
  FactorTable joint = joint_marginal(net, scope, max_factor_states);

  std::vector<std::size_t> target_radices, given_radices;
  for (int t : targets) target_radices.push_back(net.variable(t).cardinality());
  for (int g : givens) given_radices.push_back(net.variable(g).cardinality());
  const std::size_t n_rows = mixed_radix_capacity(given_radices);
  const std::size_t n_cols = mixed_radix_capacity(target_radices);

  // Look up positions of the requested variables inside the joint's scope.
  auto position = [&joint](int v) {
    for (std::size_t i = 0; i < joint.scope.size(); ++i) {
      if (joint.scope[i] == v) return i;
    }
    throw InvalidQuery("variable missing from joint scope");
  };
  std::vector<std::size_t> target_pos, given_pos;
  for (int t : targets) target_pos.push_back(position(t));
  for (int g : givens) given_pos.push_back(position(g));

  ConditionalTable out;
  out.targets = targets;
  out.givens = givens;
  out.matrix = Matrix(n_rows, n_cols);

  std::vector<std::size_t> joint_digits(joint.scope.size(), 0);
  for (std::size_t r = 0; r < n_rows; ++r) {
    auto gd = mixed_radix_decode(r, given_radices);
    for (std::size_t c = 0; c < n_cols; ++c) {
      auto td = mixed_radix_decode(c, target_radices);
      for (std::size_t i = 0; i < given_pos.size(); ++i) {
        joint_digits[given_pos[i]] = gd[i];
      }
      for (std::size_t i = 0; i < target_pos.size(); ++i) {
        joint_digits[target_pos[i]] = td[i];
      }
      out.matrix.at(r, c) =
          joint.values[mixed_radix_encode(joint_digits, joint.radices)];
    }

    double mass = 0.0;
    for (std::size_t c = 0; c < n_cols; ++c) mass += out.matrix.at(r, c);
    if (mass <= 0.0) {
      for (std::size_t c = 0; c < n_cols; ++c) {
        out.matrix.at(r, c) = 1.0 / static_cast<double>(n_cols);
      }
      out.uniform_rows.push_back(r);
    } else {
      for (std::size_t c = 0; c < n_cols; ++c) out.matrix.at(r, c) /= mass;
    }
  }
  return out;
}

double mutual_information(const BayesNet& net, int x, int y,
                          std::size_t max_factor_states) {
  if (x == y) throw InvalidQuery("mutual information needs distinct variables");
  FactorTable joint = joint_marginal(net, {x, y}, max_factor_states);

  // joint.scope is sorted; align marginals with its two slots.
  const std::size_t nx = joint.radices[0];
  const std::size_t ny = joint.radices[1];
  std::vector<double> mx(nx, 0.0), my(ny, 0.0);
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const double v = joint.values[a * ny + b];
      mx[a] += v;
      my[b] += v;
    }
  }

  double mi = 0.0;
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const double v = joint.values[a * ny + b];
      if (v > 0.0) mi += v * std::log(v / (mx[a] * my[b]));
    }
  }
  return std::max(mi, 0.0);
}

}  // namespace tvdiam
