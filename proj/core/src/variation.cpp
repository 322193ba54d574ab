#include "tvdiam/variation.hpp"

#include <algorithm>
#include <cmath>

namespace tvdiam {

namespace {

void check_pmf(std::span<const double> p, double tolerance) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw NotAPmf("negative pmf entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw NotAPmf("pmf sums to " + std::to_string(sum));
  }
}

}  // namespace

double tv_distance_raw(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::abs(p[i] - q[i]);
  }
  return std::min(0.5 * sum, 1.0);
}

double tv_distance(std::span<const double> p, std::span<const double> q,
                   double pmf_tolerance) {
  if (p.size() != q.size()) throw LengthMismatch(p.size(), q.size());
  check_pmf(p, pmf_tolerance);
  check_pmf(q, pmf_tolerance);
  return tv_distance_raw(p, q);
}

DiameterResult upper_diameter(const Matrix& m) {
  if (m.rows() == 0) throw EmptyMatrix();
  DiameterResult result;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      const double d = tv_distance_raw(m.row(i), m.row(j));
      if (d > result.value) {
        result.value = d;
        result.witness = {i, j};
      }
    }
  }
  return result;
}

DiameterResult lower_diameter(const Matrix& m) {
  if (m.rows() == 0) throw EmptyMatrix();
  if (m.rows() == 1) throw SingleRow();
  DiameterResult result;
  result.value = 2.0;  // above any attainable distance
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      const double d = tv_distance_raw(m.row(i), m.row(j));
      if (d < result.value) {
        result.value = d;
        result.witness = {i, j};
      }
    }
  }
  return result;
}

TvDecomposition tv_decompose(std::span<const double> p,
                             std::span<const double> q) {
  if (p.size() != q.size()) throw LengthMismatch(p.size(), q.size());
  check_pmf(p, 1e-6);
  check_pmf(q, 1e-6);

  const double d = tv_distance_raw(p, q);
  if (d == 0.0) throw IdenticalInputs();
  const double beta = 1.0 - d;
  if (beta <= 0.0) throw DisjointSupports();

  TvDecomposition out;
  out.beta = beta;
  out.common.resize(p.size());
  out.residual_p.resize(p.size());
  out.residual_q.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double overlap = std::min(p[i], q[i]);
    out.common[i] = overlap / beta;
    out.residual_p[i] = (p[i] - overlap) / d;
    out.residual_q[i] = (q[i] - overlap) / d;
  }
  return out;
}

double joint_diameter_bound(double d_y_given_xz, double d_z_given_x) {
  if (!(d_y_given_xz >= 0.0 && d_y_given_xz <= 1.0)) {
    throw OutOfRange("diameter outside [0,1]");
  }
  if (!(d_z_given_x >= 0.0 && d_z_given_x <= 1.0)) {
    throw OutOfRange("diameter outside [0,1]");
  }
  return std::min(d_y_given_xz + d_z_given_x, 1.0);
}

std::vector<NodeDiameter> node_diameters(const BayesNet& net,
                                         bool include_roots) {
  std::vector<NodeDiameter> out;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const Cpt& cpt = net.cpt(static_cast<int>(i));
    if (cpt.row_count() == 1 && !include_roots) continue;
    NodeDiameter entry;
    entry.node = static_cast<int>(i);
    entry.upper = upper_diameter(cpt);
    if (cpt.row_count() >= 2) {
      entry.has_lower = true;
      entry.lower = lower_diameter(cpt);
    }
    out.push_back(entry);
  }
  return out;
}

}  // namespace tvdiam
