#pragma once

#include <map>
#include <string>

#include "tvdiam/junction_tree.hpp"
#include "tvdiam/model.hpp"

namespace tvdiam {

class UnknownAnnotationTarget : public Error {
 public:
  explicit UnknownAnnotationTarget(const std::string& what)
      : Error("annotation refers to " + what) {}
};

// Annotations for the network drawing: per-edge strengths become fixed
// two-decimal labels and pen widths (affine from [0,1] to [0.5, 5.0]); node
// values in [0,1] become a linear white-to-dark fill ramp.
struct DotAnnotations {
  std::map<Edge, double> edge_strengths;
  std::map<int, double> node_values;
};

// Deterministic DOT rendering of the DAG: nodes and edges in declaration
// order, byte-identical across runs.
std::string emit_dot(const BayesNet& net, const DotAnnotations& annotations);

// Junction tree rendering with separators as edge labels; optional values in
// [0,1] color the cliques on the same white-to-dark ramp.
std::string emit_junction_tree_dot(const BayesNet& net, const JunctionTree& jt,
                                   const std::map<int, double>* clique_values);

}  // namespace tvdiam
