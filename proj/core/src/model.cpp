#include "tvdiam/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tvdiam {

namespace {

std::string join_path(const std::vector<std::string>& path) {
  std::ostringstream out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out << " -> ";
    out << path[i];
  }
  return out.str();
}

}  // namespace

CycleDetected::CycleDetected(std::vector<std::string> p)
    : Error("cycle detected: " + join_path(p)), path(std::move(p)) {}

RowSumViolation::RowSumViolation(const std::string& node, std::size_t row,
                                 double sum)
    : Error("row " + std::to_string(row) + " of CPT for " + node +
            " sums to " + std::to_string(sum)),
      node(node),
      row(row),
      sum(sum) {}

LevelOutOfRange::LevelOutOfRange(const std::string& variable, int level)
    : Error("level index " + std::to_string(level) + " out of range for " +
            variable) {}

NotAParent::NotAParent(const std::string& variable, const std::string& child)
    : Error(variable + " is not a parent of " + child) {}

std::size_t mixed_radix_capacity(std::span<const std::size_t> radices) {
  std::size_t n = 1;
  for (std::size_t r : radices) n *= r;
  return n;
}

std::size_t mixed_radix_encode(std::span<const std::size_t> digits,
                               std::span<const std::size_t> radices) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    index = index * radices[i] + digits[i];
  }
  return index;
}

std::vector<std::size_t> mixed_radix_decode(
    std::size_t index, std::span<const std::size_t> radices) {
  std::vector<std::size_t> digits(radices.size(), 0);
  for (std::size_t i = radices.size(); i-- > 0;) {
    digits[i] = index % radices[i];
    index /= radices[i];
  }
  return digits;
}

int DiscreteVariable::level_index(const std::string& level) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == level) return static_cast<int>(i);
  }
  return -1;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw Error("ragged matrix rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.values_.begin() + r * m.cols_);
  }
  return m;
}

namespace {

void check_variable(const DiscreteVariable& v) {
  if (v.name.empty()) throw Error("variable with empty name");
  if (v.levels.size() < 2) {
    throw Error("variable " + v.name + " needs at least 2 levels");
  }
  std::set<std::string> seen;
  for (const auto& level : v.levels) {
    if (!seen.insert(level).second) throw DuplicateName(v.name + "." + level);
  }
}

}  // namespace

Cpt::Cpt(DiscreteVariable child, std::vector<DiscreteVariable> parents,
         Matrix table, double row_tolerance)
    : child_(std::move(child)),
      parents_(std::move(parents)),
      table_(std::move(table)),
      row_tolerance_(row_tolerance) {
  check_variable(child_);
  for (const auto& p : parents_) check_variable(p);

  auto radices = parent_radices();
  const std::size_t expected_rows = mixed_radix_capacity(radices);
  if (table_.rows() != expected_rows) {
    throw Error("CPT for " + child_.name + " has " +
                std::to_string(table_.rows()) + " rows, expected " +
                std::to_string(expected_rows));
  }
  if (table_.cols() != child_.cardinality()) {
    throw Error("CPT for " + child_.name + " has " +
                std::to_string(table_.cols()) + " columns, expected " +
                std::to_string(child_.cardinality()));
  }

  const double renormalize_band = std::min(row_tolerance, 1e-6);
  for (std::size_t r = 0; r < table_.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < table_.cols(); ++c) {
      const double v = table_.at(r, c);
      if (!(v >= 0.0)) {
        throw NotAPmf("negative entry in CPT for " + child_.name + " at row " +
                      std::to_string(r));
      }
      sum += v;
    }
    const double deviation = std::abs(sum - 1.0);
    if (deviation > row_tolerance) {
      throw RowSumViolation(child_.name, r, sum);
    }
    if (deviation <= 1e-12) continue;
    if (deviation <= renormalize_band) {
      // Published tables are often rounded; rescale rows that are off by
      // more than floating-point noise and remember that we did.
      for (std::size_t c = 0; c < table_.cols(); ++c) {
        table_.at(r, c) /= sum;
      }
      renormalized_rows_.push_back(r);
    } else {
      // The caller raised the tolerance deliberately; rescaling would
      // distort the published numbers, so keep the row and flag it.
      tolerated_rows_.push_back(r);
    }
  }
}

int Cpt::parent_position(const std::string& name) const {
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    if (parents_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::size_t> Cpt::parent_radices() const {
  std::vector<std::size_t> radices;
  radices.reserve(parents_.size());
  for (const auto& p : parents_) radices.push_back(p.cardinality());
  return radices;
}

bool Cpt::is_full(const ParentAssignment& assignment) const {
  for (const auto& p : parents_) {
    if (!assignment.count(p.name)) return false;
  }
  return true;
}

std::size_t row_index(const Cpt& cpt, const ParentAssignment& assignment) {
  std::vector<std::size_t> digits;
  digits.reserve(cpt.parents().size());
  for (const auto& p : cpt.parents()) {
    auto it = assignment.find(p.name);
    if (it == assignment.end()) throw IncompleteAssignment(p.name);
    if (it->second < 0 || it->second >= static_cast<int>(p.cardinality())) {
      throw LevelOutOfRange(p.name, it->second);
    }
    digits.push_back(static_cast<std::size_t>(it->second));
  }
  for (const auto& [name, level] : assignment) {
    if (cpt.parent_position(name) < 0) throw NotAParent(name, cpt.child().name);
  }
  auto radices = cpt.parent_radices();
  return mixed_radix_encode(digits, radices);
}

ParentAssignment assignment_for_row(const Cpt& cpt, std::size_t row) {
  if (row >= cpt.row_count()) {
    throw LevelOutOfRange(cpt.child().name + " row", static_cast<int>(row));
  }
  auto radices = cpt.parent_radices();
  auto digits = mixed_radix_decode(row, radices);
  ParentAssignment assignment;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    assignment[cpt.parents()[i].name] = static_cast<int>(digits[i]);
  }
  return assignment;
}

Cpt sub_cpt(const Cpt& cpt, const ParentAssignment& fixed) {
  for (const auto& [name, level] : fixed) {
    const int pos = cpt.parent_position(name);
    if (pos < 0) throw NotAParent(name, cpt.child().name);
    const auto& parent = cpt.parents()[pos];
    if (level < 0 || level >= static_cast<int>(parent.cardinality())) {
      throw LevelOutOfRange(name, level);
    }
  }

  std::vector<DiscreteVariable> kept;
  for (const auto& p : cpt.parents()) {
    if (!fixed.count(p.name)) kept.push_back(p);
  }

  std::vector<std::size_t> kept_radices;
  for (const auto& p : kept) kept_radices.push_back(p.cardinality());

  Matrix out(mixed_radix_capacity(kept_radices), cpt.column_count());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto kept_digits = mixed_radix_decode(r, kept_radices);
    ParentAssignment full = fixed;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      full[kept[i].name] = static_cast<int>(kept_digits[i]);
    }
    const std::size_t src = row_index(cpt, full);
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out.at(r, c) = cpt.table().at(src, c);
    }
  }
  return Cpt(cpt.child(), std::move(kept), std::move(out),
             cpt.row_tolerance());
}

Dag Dag::make(int node_count, std::vector<Edge> edges) {
  Dag dag;
  dag.node_count = node_count;
  dag.edges = std::move(edges);
  dag.parents.assign(node_count, {});
  dag.children.assign(node_count, {});
  for (const Edge& e : dag.edges) {
    dag.parents[e.child].push_back(e.parent);
    dag.children[e.parent].push_back(e.child);
  }
  return dag;
}

bool Dag::has_edge(int parent, int child) const {
  for (int c : children[parent]) {
    if (c == child) return true;
  }
  return false;
}

void validate_dag(const Dag& dag, const std::vector<std::string>& names) {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : dag.edges) {
    if (e.parent < 0 || e.parent >= dag.node_count || e.child < 0 ||
        e.child >= dag.node_count) {
      throw Error("edge endpoint out of range");
    }
    if (e.parent == e.child) {
      throw CycleDetected({names[e.parent], names[e.child]});
    }
    if (!seen.insert({e.parent, e.child}).second) {
      throw Error("duplicate edge " + names[e.parent] + " -> " +
                  names[e.child]);
    }
  }

  // Kahn's algorithm; any leftover node lies on a cycle.
  std::vector<int> indegree(dag.node_count, 0);
  for (const Edge& e : dag.edges) indegree[e.child]++;
  std::vector<int> queue;
  for (int i = 0; i < dag.node_count; ++i) {
    if (indegree[i] == 0) queue.push_back(i);
  }
  std::size_t processed = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++processed;
    for (int c : dag.children[v]) {
      if (--indegree[c] == 0) queue.push_back(c);
    }
  }
  if (processed == static_cast<std::size_t>(dag.node_count)) return;

  // Walk the residual graph to surface one concrete cycle.
  std::vector<int> stuck;
  for (int i = 0; i < dag.node_count; ++i) {
    if (indegree[i] > 0) stuck.push_back(i);
  }
  std::vector<int> walk;
  std::vector<int> position(dag.node_count, -1);
  int v = stuck.front();
  while (position[v] < 0) {
    position[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (int p : dag.parents[v]) {
      if (indegree[p] > 0) {
        v = p;
        break;
      }
    }
  }
  std::vector<std::string> cycle;
  for (std::size_t i = position[v]; i < walk.size(); ++i) {
    cycle.push_back(names[walk[i]]);
  }
  cycle.push_back(names[v]);
  std::reverse(cycle.begin(), cycle.end());
  throw CycleDetected(cycle);
}

int BayesNet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::size_t> BayesNet::cardinalities() const {
  std::vector<std::size_t> out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) out.push_back(v.cardinality());
  return out;
}

BayesNet build_network(std::vector<DiscreteVariable> variables,
                       std::vector<Edge> edges, std::vector<Cpt> cpts,
                       std::vector<LoadWarning>* warnings) {
  BayesNet net;
  net.variables_ = std::move(variables);

  std::vector<std::string> names;
  for (const auto& v : net.variables_) {
    check_variable(v);
    names.push_back(v.name);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!net.index_.emplace(names[i], static_cast<int>(i)).second) {
      throw DuplicateName(names[i]);
    }
  }

  net.dag_ = Dag::make(static_cast<int>(net.variables_.size()), std::move(edges));
  validate_dag(net.dag_, names);

  if (cpts.size() != net.variables_.size()) {
    throw Error("expected " + std::to_string(net.variables_.size()) +
                " CPTs, got " + std::to_string(cpts.size()));
  }

  net.cpts_.reserve(cpts.size());
  std::vector<int> cpt_for_node(net.variables_.size(), -1);
  for (std::size_t k = 0; k < cpts.size(); ++k) {
    const int node = net.index_of(cpts[k].child().name);
    if (node < 0) throw Error("CPT for unknown variable " + cpts[k].child().name);
    if (cpt_for_node[node] >= 0) throw DuplicateName(cpts[k].child().name);
    cpt_for_node[node] = static_cast<int>(k);
  }

  net.parent_indices_.assign(net.variables_.size(), {});
  for (std::size_t i = 0; i < net.variables_.size(); ++i) {
    Cpt& cpt = cpts[cpt_for_node[i]];
    if (cpt.child() != net.variables_[i]) {
      throw Error("CPT child declaration differs from network variable " +
                  net.variables_[i].name);
    }

    // The CPT's declared parent order is canonical; it must name exactly the
    // DAG parent set, with level lists that match the declarations.
    std::set<int> dag_parents(net.dag_.parents[i].begin(),
                              net.dag_.parents[i].end());
    std::set<int> cpt_parents;
    for (const auto& p : cpt.parents()) {
      const int idx = net.index_of(p.name);
      if (idx < 0 || p != net.variables_[idx]) {
        throw ParentMismatch(net.variables_[i].name);
      }
      if (!cpt_parents.insert(idx).second) {
        throw ParentMismatch(net.variables_[i].name);
      }
    }
    if (cpt_parents != dag_parents) {
      throw ParentMismatch(net.variables_[i].name);
    }

    for (const auto& p : cpt.parents()) {
      net.parent_indices_[i].push_back(net.index_of(p.name));
    }
    if (warnings) {
      for (std::size_t row : cpt.renormalized_rows()) {
        warnings->push_back({net.variables_[i].name,
                             "row " + std::to_string(row) + " renormalized"});
      }
      for (std::size_t row : cpt.tolerated_rows()) {
        warnings->push_back({net.variables_[i].name,
                             "row " + std::to_string(row) +
                                 " accepted unnormalized (raised tolerance)"});
      }
    }
    net.cpts_.push_back(std::move(cpt));
  }

  return net;
}

}  // namespace tvdiam
