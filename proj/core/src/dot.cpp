#include "tvdiam/dot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tvdiam {

namespace {

std::string fixed2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

// Linear white -> dark gray ramp over [0,1].
std::string ramp_color(double v) {
  v = std::min(std::max(v, 0.0), 1.0);
  const int channel = 255 - static_cast<int>(std::lround(205.0 * v));
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", channel, channel,
                channel);
  return buffer;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string emit_dot(const BayesNet& net, const DotAnnotations& annotations) {
  for (const auto& [node, value] : annotations.node_values) {
    if (node < 0 || node >= static_cast<int>(net.node_count())) {
      throw UnknownAnnotationTarget("node index " + std::to_string(node));
    }
    (void)value;
  }
  for (const auto& [edge, value] : annotations.edge_strengths) {
    if (!net.dag().has_edge(edge.parent, edge.child)) {
      throw UnknownAnnotationTarget("edge " + std::to_string(edge.parent) +
                                    " -> " + std::to_string(edge.child));
    }
    (void)value;
  }

  std::ostringstream out;
  out << "digraph bayesnet {\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    out << "  " << quote(net.variable(static_cast<int>(i)).name);
    auto it = annotations.node_values.find(static_cast<int>(i));
    if (it != annotations.node_values.end()) {
      out << " [style=filled, fillcolor=" << quote(ramp_color(it->second));
      if (it->second > 0.55) out << ", fontcolor=white";
      out << "]";
    }
    out << ";\n";
  }
  for (const Edge& e : net.dag().edges) {
    out << "  " << quote(net.variable(e.parent).name) << " -> "
        << quote(net.variable(e.child).name);
    auto it = annotations.edge_strengths.find(e);
    if (it != annotations.edge_strengths.end()) {
      const double width = 0.5 + 4.5 * std::min(std::max(it->second, 0.0), 1.0);
      out << " [label=" << quote(fixed2(it->second))
          << ", penwidth=" << fixed2(width) << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_junction_tree_dot(const BayesNet& net, const JunctionTree& jt,
                                   const std::map<int, double>* clique_values) {
  if (clique_values) {
    for (const auto& [clique, value] : *clique_values) {
      if (clique < 0 || clique >= static_cast<int>(jt.cliques.size())) {
        throw UnknownAnnotationTarget("clique index " + std::to_string(clique));
      }
      (void)value;
    }
  }

  auto clique_label = [&](const Clique& c) {
    std::string label;
    for (int v : c) {
      if (!label.empty()) label += ", ";
      label += net.variable(v).name;
    }
    return label;
  };

  std::ostringstream out;
  out << "graph junction_tree {\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < jt.cliques.size(); ++i) {
    out << "  C" << i << " [label=" << quote(clique_label(jt.cliques[i]));
    if (clique_values) {
      auto it = clique_values->find(static_cast<int>(i));
      if (it != clique_values->end()) {
        out << ", style=filled, fillcolor=" << quote(ramp_color(it->second));
        if (it->second > 0.55) out << ", fontcolor=white";
        out << ", xlabel=" << quote(fixed2(it->second));
      }
    }
    out << "];\n";
  }
  for (std::size_t i = 1; i < jt.cliques.size(); ++i) {
    out << "  C" << jt.tree_parent[i] << " -- C" << i
        << " [label=" << quote(clique_label(jt.separators[i])) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tvdiam
