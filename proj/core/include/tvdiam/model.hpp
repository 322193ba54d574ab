#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tvdiam/errors.hpp"

namespace tvdiam {

// ---------------------------------------------------------------------------
// Errors

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name: " + name), name(name) {}
  std::string name;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<std::string> path);
  std::vector<std::string> path;
};

class RowSumViolation : public Error {
 public:
  RowSumViolation(const std::string& node, std::size_t row, double sum);
  std::string node;
  std::size_t row;
  double sum;
};

class ParentMismatch : public Error {
 public:
  explicit ParentMismatch(const std::string& node)
      : Error("CPT parents do not match DAG parents for node " + node),
        node(node) {}
  std::string node;
};

class NotAPmf : public Error {
 public:
  explicit NotAPmf(const std::string& what) : Error(what) {}
};

class IncompleteAssignment : public Error {
 public:
  explicit IncompleteAssignment(const std::string& missing)
      : Error("assignment is missing parent " + missing) {}
};

class LevelOutOfRange : public Error {
 public:
  LevelOutOfRange(const std::string& variable, int level);
};

class NotAParent : public Error {
 public:
  NotAParent(const std::string& variable, const std::string& child);
};

class UnknownLevel : public Error {
 public:
  UnknownLevel(const std::string& variable, const std::string& level)
      : Error("variable " + variable + " has no level " + level) {}
};

// ---------------------------------------------------------------------------
// Mixed-radix indexing. The first digit is always the most significant one;
// every row convention in the library derives from these three functions.

std::size_t mixed_radix_capacity(std::span<const std::size_t> radices);
std::size_t mixed_radix_encode(std::span<const std::size_t> digits,
                               std::span<const std::size_t> radices);
std::vector<std::size_t> mixed_radix_decode(std::size_t index,
                                            std::span<const std::size_t> radices);

// ---------------------------------------------------------------------------
// Domain types

// A named categorical variable with an ordered list of levels. The ordinal
// flag declares that the level order carries meaning (it restricts which
// levels may be amalgamated).
struct DiscreteVariable {
  std::string name;
  std::vector<std::string> levels;
  bool ordinal = false;

  std::size_t cardinality() const { return levels.size(); }

  // Index of `level`, or -1 when the variable has no such level.
  int level_index(const std::string& level) const;

  friend bool operator==(const DiscreteVariable&,
                         const DiscreteVariable&) = default;
};

// Directed edge, by node index.
struct Edge {
  int parent = -1;
  int child = -1;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Assignment of levels to a subset of a CPT's parents, keyed by variable
// name. "Full" is relative to a particular CPT (see Cpt::is_full).
using ParentAssignment = std::map<std::string, int>;

// Conditional probability table: a stochastic matrix for one child variable
// given an ordered parent list. Rows are indexed mixed-radix over the parent
// levels with the first declared parent most significant; columns follow the
// child's level order. The table is self-contained (it carries copies of the
// variables involved) so it can be built and analyzed without a network.
class Cpt {
 public:
  // Validates shape and non-negativity. Row sums are handled in three bands:
  // deviations from 1 up to 1e-12 are treated as exact; deviations within
  // the standard 1e-6 band are renormalized and recorded in
  // renormalized_rows; deviations beyond that but within a caller-raised
  // `row_tolerance` are kept as-is and recorded in tolerated_rows (published
  // tables sometimes print rows that do not sum to one); anything larger
  // raises RowSumViolation.
  Cpt(DiscreteVariable child, std::vector<DiscreteVariable> parents,
      Matrix table, double row_tolerance = 1e-6);

  const DiscreteVariable& child() const { return child_; }
  const std::vector<DiscreteVariable>& parents() const { return parents_; }
  const Matrix& table() const { return table_; }
  std::size_t row_count() const { return table_.rows(); }
  std::size_t column_count() const { return table_.cols(); }

  // Rows that were renormalized on construction (load-time warning record).
  const std::vector<std::size_t>& renormalized_rows() const {
    return renormalized_rows_;
  }

  // Rows accepted unnormalized under a raised tolerance.
  const std::vector<std::size_t>& tolerated_rows() const {
    return tolerated_rows_;
  }

  // Tolerance this table was validated with; tables derived from it (sub-CPTs,
  // merged CPTs) inherit it.
  double row_tolerance() const { return row_tolerance_; }

  // Position of `name` in the parent list, or -1.
  int parent_position(const std::string& name) const;

  std::vector<std::size_t> parent_radices() const;

  bool is_full(const ParentAssignment& assignment) const;

  friend bool operator==(const Cpt& a, const Cpt& b) {
    return a.child_ == b.child_ && a.parents_ == b.parents_ &&
           a.table_ == b.table_;
  }

 private:
  DiscreteVariable child_;
  std::vector<DiscreteVariable> parents_;
  Matrix table_;
  std::vector<std::size_t> renormalized_rows_;
  std::vector<std::size_t> tolerated_rows_;
  double row_tolerance_ = 1e-6;
};

// Mixed-radix row number of a full parent assignment, bijective over the
// table's rows. First declared parent most significant.
std::size_t row_index(const Cpt& cpt, const ParentAssignment& assignment);

// Inverse of row_index.
ParentAssignment assignment_for_row(const Cpt& cpt, std::size_t row);

// The sub-CPT obtained by fixing a subset of the parents. The result keeps
// the unfixed parents in their original order and copies the matching rows
// verbatim.
Cpt sub_cpt(const Cpt& cpt, const ParentAssignment& fixed);

// Directed acyclic graph over node indices 0..n-1. Use build_network (or
// validate_dag) to establish acyclicity.
struct Dag {
  int node_count = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<int>> parents;   // parents[i]: declared edge order
  std::vector<std::vector<int>> children;  // children[i]: declared edge order

  static Dag make(int node_count, std::vector<Edge> edges);
  bool has_edge(int parent, int child) const;
};

// Throws CycleDetected / DuplicateName on self-loops, duplicate edges or
// cycles. `names` is used for diagnostics only.
void validate_dag(const Dag& dag, const std::vector<std::string>& names);

// Non-fatal observation recorded while building or loading a network.
struct LoadWarning {
  std::string node;
  std::string message;
};

// A discrete Bayesian network: variables in declaration order, a DAG over
// them, and one CPT per node whose parent list matches the DAG. Immutable
// after construction; safe to share across threads.
class BayesNet {
 public:
  // An empty network; build_network is the only route to a populated one.
  BayesNet() = default;

  std::size_t node_count() const { return variables_.size(); }
  const std::vector<DiscreteVariable>& variables() const { return variables_; }
  const DiscreteVariable& variable(int i) const { return variables_[i]; }
  const Dag& dag() const { return dag_; }
  const Cpt& cpt(int i) const { return cpts_[i]; }
  const std::vector<Cpt>& cpts() const { return cpts_; }

  // Node index for `name`, or -1.
  int index_of(const std::string& name) const;

  // Parent indices of node i in the order declared by its CPT.
  const std::vector<int>& parent_indices(int i) const {
    return parent_indices_[i];
  }
  const std::vector<int>& child_indices(int i) const {
    return dag_.children[i];
  }
  bool is_root(int i) const { return parent_indices_[i].empty(); }

  std::vector<std::size_t> cardinalities() const;

  friend BayesNet build_network(std::vector<DiscreteVariable> variables,
                                std::vector<Edge> edges, std::vector<Cpt> cpts,
                                std::vector<LoadWarning>* warnings);

 private:
  std::vector<DiscreteVariable> variables_;
  Dag dag_;
  std::vector<Cpt> cpts_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> parent_indices_;
};

// Validates and assembles a network: unique names, well-formed variables,
// acyclic edge set, and CPT parent sets equal to the DAG parent sets. CPTs
// may be passed in any order; they are matched to nodes by child name.
// Renormalization warnings collected by the CPTs are appended to `warnings`
// when provided.
BayesNet build_network(std::vector<DiscreteVariable> variables,
                       std::vector<Edge> edges, std::vector<Cpt> cpts,
                       std::vector<LoadWarning>* warnings = nullptr);

}  // namespace tvdiam
