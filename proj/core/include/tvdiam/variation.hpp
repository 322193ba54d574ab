#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tvdiam/errors.hpp"
#include "tvdiam/model.hpp"

namespace tvdiam {

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("pmf lengths differ: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

class EmptyMatrix : public Error {
 public:
  EmptyMatrix() : Error("matrix has no rows") {}
};

class SingleRow : public Error {
 public:
  SingleRow() : Error("lower diameter needs at least two rows") {}
};

class IdenticalInputs : public Error {
 public:
  IdenticalInputs() : Error("decomposition undefined for identical pmfs") {}
};

class DisjointSupports : public Error {
 public:
  DisjointSupports() : Error("decomposition undefined for disjoint supports") {}
};

class OutOfRange : public Error {
 public:
  explicit OutOfRange(const std::string& what) : Error(what) {}
};

// Total variation distance between two pmfs over the same sample space:
// half the L1 distance, in [0, 1]. Validates that both inputs are pmfs.
double tv_distance(std::span<const double> p, std::span<const double> q,
                   double pmf_tolerance = 1e-6);

inline double tv_distance(std::initializer_list<double> p,
                          std::initializer_list<double> q) {
  return tv_distance(std::span<const double>(p.begin(), p.size()),
                     std::span<const double>(q.begin(), q.size()));
}

// L1/2 distance without pmf validation, for rows of already-validated
// stochastic matrices.
double tv_distance_raw(std::span<const double> p, std::span<const double> q);

// Extremal pairwise row distance of a stochastic matrix together with the
// first row pair attaining it (lexicographically smallest (i, j), i <= j).
struct DiameterResult {
  double value = 0.0;
  std::pair<std::size_t, std::size_t> witness{0, 0};
};

// Maximum pairwise row TV distance; 0 for a single-row matrix.
DiameterResult upper_diameter(const Matrix& m);

// Minimum pairwise row TV distance over distinct row pairs.
DiameterResult lower_diameter(const Matrix& m);

inline DiameterResult upper_diameter(const Cpt& cpt) {
  return upper_diameter(cpt.table());
}
inline DiameterResult lower_diameter(const Cpt& cpt) {
  return lower_diameter(cpt.table());
}

// Split of a pmf pair into a shared component and two residuals:
//   p = beta * common + (1 - beta) * residual_p   (and symmetrically for q)
// with beta = 1 - tv_distance(p, q). Defined for 0 < beta < 1.
struct TvDecomposition {
  double beta = 0.0;
  std::vector<double> common;
  std::vector<double> residual_p;
  std::vector<double> residual_q;
};

TvDecomposition tv_decompose(std::span<const double> p,
                             std::span<const double> q);

inline TvDecomposition tv_decompose(std::initializer_list<double> p,
                                    std::initializer_list<double> q) {
  return tv_decompose(std::span<const double>(p.begin(), p.size()),
                      std::span<const double>(q.begin(), q.size()));
}

// min(d_y_given_xz + d_z_given_x, 1): upper bound on the diameter of the
// joint table P_{YZ|X} in terms of its component diameters.
double joint_diameter_bound(double d_y_given_xz, double d_z_given_x);

// Per-node diameter summary of a network.
struct NodeDiameter {
  int node = -1;
  DiameterResult upper;
  bool has_lower = false;   // false for single-row CPTs
  DiameterResult lower;
};

// Diameters of every node's CPT in declaration order. Root nodes (single-row
// CPTs) are skipped unless include_roots is set.
std::vector<NodeDiameter> node_diameters(const BayesNet& net,
                                         bool include_roots = false);

}  // namespace tvdiam
