#include "tvdiam/refinement.hpp"

#include <algorithm>
#include <cmath>

namespace tvdiam {

namespace {

struct MergeSpec {
  int variable;
  std::size_t low;    // smaller level index, renamed to the merged label
  std::size_t high;   // larger level index, removed
  DiscreteVariable merged;
};

MergeSpec make_merge_spec(const BayesNet& net, int variable,
                          const std::string& level_a,
                          const std::string& level_b) {
  if (variable < 0 || variable >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("variable index out of range");
  }
  const DiscreteVariable& v = net.variable(variable);
  if (v.cardinality() < 3) throw TooFewLevels(v.name);

  const int ia = v.level_index(level_a);
  if (ia < 0) throw UnknownLevel(v.name, level_a);
  const int ib = v.level_index(level_b);
  if (ib < 0) throw UnknownLevel(v.name, level_b);
  if (ia == ib) throw UnknownLevel(v.name, level_a + " (merged with itself)");
  if (v.ordinal && std::abs(ia - ib) != 1) {
    throw NonConsecutiveOrdinal(v.name, level_a, level_b);
  }

  MergeSpec spec;
  spec.variable = variable;
  spec.low = static_cast<std::size_t>(std::min(ia, ib));
  spec.high = static_cast<std::size_t>(std::max(ia, ib));

  spec.merged = v;
  spec.merged.levels[spec.low] =
      v.levels[spec.low] + "+" + v.levels[spec.high];
  spec.merged.levels.erase(spec.merged.levels.begin() + spec.high);
  return spec;
}

// Map a level index of the merged variable back to the original level
// indices it stands for.
std::vector<std::size_t> source_levels(const MergeSpec& spec, std::size_t d) {
  if (d == spec.low) return {spec.low, spec.high};
  return {d < spec.high ? d : d + 1};
}

// Rebuild one CPT for the merged network. The merged variable's own CPT sums
// the two columns; CPTs with the merged variable as a parent average the two
// source rows; everything else is copied.
Cpt merged_cpt(const BayesNet& net, const MergeSpec& spec, int node) {
  const Cpt& cpt = net.cpt(node);
  const std::string& vname = net.variable(spec.variable).name;

  DiscreteVariable child =
      node == spec.variable ? spec.merged : cpt.child();

  std::vector<DiscreteVariable> parents;
  int vpos = -1;
  for (const auto& p : cpt.parents()) {
    if (p.name == vname) {
      vpos = static_cast<int>(parents.size());
      parents.push_back(spec.merged);
    } else {
      parents.push_back(p);
    }
  }

  std::vector<std::size_t> radices;
  for (const auto& p : parents) radices.push_back(p.cardinality());
  Matrix table(mixed_radix_capacity(radices), child.cardinality());

  auto old_radices = cpt.parent_radices();
  for (std::size_t r = 0; r < table.rows(); ++r) {
    auto digits = mixed_radix_decode(r, radices);

    std::vector<std::vector<std::size_t>> old_rows{{}};
    for (std::size_t i = 0; i < digits.size(); ++i) {
      std::vector<std::size_t> choices =
          static_cast<int>(i) == vpos ? source_levels(spec, digits[i])
                                      : std::vector<std::size_t>{digits[i]};
      std::vector<std::vector<std::size_t>> extended;
      for (const auto& prefix : old_rows) {
        for (std::size_t choice : choices) {
          auto next = prefix;
          next.push_back(choice);
          extended.push_back(std::move(next));
        }
      }
      old_rows = std::move(extended);
    }

    for (std::size_t c = 0; c < table.cols(); ++c) {
      double sum = 0.0;
      for (const auto& old_digits : old_rows) {
        const std::size_t old_row = mixed_radix_encode(old_digits, old_radices);
        if (node == spec.variable) {
          for (std::size_t src : source_levels(spec, c)) {
            sum += cpt.table().at(old_row, src);
          }
        } else {
          sum += cpt.table().at(old_row, c);
        }
      }
      table.at(r, c) = sum / static_cast<double>(old_rows.size());
    }
  }
  return Cpt(std::move(child), std::move(parents), std::move(table),
             cpt.row_tolerance());
}

}  // namespace

AmalgamationReport amalgamate_levels(const BayesNet& net, int variable,
                                     const std::string& level_a,
                                     const std::string& level_b) {
  const MergeSpec spec = make_merge_spec(net, variable, level_a, level_b);

  std::vector<DiscreteVariable> variables = net.variables();
  variables[variable] = spec.merged;

  std::vector<Cpt> cpts;
  cpts.reserve(net.node_count());
  for (int node = 0; node < static_cast<int>(net.node_count()); ++node) {
    cpts.push_back(merged_cpt(net, spec, node));
  }

  AmalgamationReport report;
  report.variable = variable;
  report.level_a = net.variable(variable).levels[spec.low];
  report.level_b = net.variable(variable).levels[spec.high];
  report.merged_level = spec.merged.levels[spec.low];
  report.own_before = upper_diameter(net.cpt(variable)).value;
  report.own_after = upper_diameter(cpts[variable]).value;

  std::vector<int> children = net.child_indices(variable);
  std::sort(children.begin(), children.end());
  for (int child : children) {
    ChildDiameterDelta delta;
    delta.child = child;
    delta.before = upper_diameter(net.cpt(child)).value;
    delta.after = upper_diameter(cpts[child]).value;
    report.children.push_back(delta);
  }

  report.note = net.variable(variable).name + ": columns " + report.level_a +
                " and " + report.level_b + " summed in its own CPT; " +
                std::to_string(children.size()) +
                " child CPT(s) row-averaged";
  report.network =
      build_network(std::move(variables), net.dag().edges, std::move(cpts));
  return report;
}

std::vector<AmalgamationSuggestion> suggest_amalgamation(const BayesNet& net,
                                                         int variable) {
  if (variable < 0 || variable >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("variable index out of range");
  }
  const DiscreteVariable& v = net.variable(variable);
  if (v.cardinality() < 3) throw TooFewLevels(v.name);

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  if (v.ordinal) {
    for (std::size_t i = 0; i + 1 < v.cardinality(); ++i) {
      candidates.emplace_back(i, i + 1);
    }
  } else {
    for (std::size_t i = 0; i < v.cardinality(); ++i) {
      for (std::size_t j = i + 1; j < v.cardinality(); ++j) {
        candidates.emplace_back(i, j);
      }
    }
  }

  std::vector<AmalgamationSuggestion> suggestions;
  for (auto [ia, ib] : candidates) {
    AmalgamationSuggestion s;
    s.level_a = v.levels[ia];
    s.level_b = v.levels[ib];

    // Proximity of the rows a merge would average: scan every child CPT and
    // every assignment of its other parents.
    for (int child : net.child_indices(variable)) {
      const Cpt& cpt = net.cpt(child);
      std::vector<DiscreteVariable> others;
      for (const auto& p : cpt.parents()) {
        if (p.name != v.name) others.push_back(p);
      }
      std::vector<std::size_t> radices;
      for (const auto& p : others) radices.push_back(p.cardinality());
      const std::size_t contexts = mixed_radix_capacity(radices);
      for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
        auto digits = mixed_radix_decode(ctx, radices);
        ParentAssignment assignment;
        for (std::size_t k = 0; k < others.size(); ++k) {
          assignment[others[k].name] = static_cast<int>(digits[k]);
        }
        assignment[v.name] = static_cast<int>(ia);
        const std::size_t row_a = row_index(cpt, assignment);
        assignment[v.name] = static_cast<int>(ib);
        const std::size_t row_b = row_index(cpt, assignment);
        s.score = std::max(s.score, tv_distance_raw(cpt.table().row(row_a),
                                                    cpt.table().row(row_b)));
      }
    }

    s.children =
        amalgamate_levels(net, variable, s.level_a, s.level_b).children;
    suggestions.push_back(std::move(s));
  }

  std::stable_sort(suggestions.begin(), suggestions.end(),
                   [](const AmalgamationSuggestion& a,
                      const AmalgamationSuggestion& b) {
                     return a.score < b.score;
                   });
  return suggestions;
}

namespace {

Cpt context_sub_cpt(const BayesNet& net, int node, int varying_parent,
                    const ParentAssignment& context) {
  if (node < 0 || node >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("node index out of range");
  }
  const Cpt& cpt = net.cpt(node);
  const std::string& vary = net.variable(varying_parent).name;
  if (cpt.parent_position(vary) < 0) {
    throw NotAParent(vary, cpt.child().name);
  }
  if (context.count(vary)) {
    throw BadContext("context must leave " + vary + " free");
  }
  for (const auto& p : cpt.parents()) {
    if (p.name != vary && !context.count(p.name)) {
      throw BadContext("context is missing parent " + p.name);
    }
  }
  if (context.size() != cpt.parents().size() - 1) {
    throw BadContext("context assigns variables beyond the parent set");
  }
  return sub_cpt(cpt, context);
}

}  // namespace

double csi_index(const BayesNet& net, int node, int varying_parent,
                 const ParentAssignment& context) {
  return upper_diameter(context_sub_cpt(net, node, varying_parent, context))
      .value;
}

PartialIndex partial_index(const BayesNet& net, int node, int varying_parent,
                           const ParentAssignment& context) {
  const DiameterResult d =
      lower_diameter(context_sub_cpt(net, node, varying_parent, context));
  return {d.value, d.witness};
}

std::vector<AsymmetryFinding> asymmetry_scan(const BayesNet& net, int node,
                                             double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw OutOfRange("threshold outside [0,1]");
  }
  if (node < 0 || node >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("node index out of range");
  }
  const Cpt& cpt = net.cpt(node);

  std::vector<AsymmetryFinding> findings;
  for (const auto& parent : cpt.parents()) {
    const int j = net.index_of(parent.name);
    std::vector<DiscreteVariable> others;
    for (const auto& p : cpt.parents()) {
      if (p.name != parent.name) others.push_back(p);
    }
    std::vector<std::size_t> radices;
    for (const auto& p : others) radices.push_back(p.cardinality());
    const std::size_t contexts = mixed_radix_capacity(radices);
    for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
      auto digits = mixed_radix_decode(ctx, radices);
      ParentAssignment context;
      for (std::size_t k = 0; k < others.size(); ++k) {
        context[others[k].name] = static_cast<int>(digits[k]);
      }
      AsymmetryFinding finding;
      finding.node = node;
      finding.varying_parent = j;
      finding.context = context;
      finding.csi = csi_index(net, node, j, context);
      const PartialIndex partial = partial_index(net, node, j, context);
      finding.partial = partial.value;
      finding.partial_witness = partial.witness;
      if (finding.csi <= threshold || finding.partial <= threshold) {
        findings.push_back(std::move(finding));
      }
    }
  }

  std::stable_sort(findings.begin(), findings.end(),
                   [](const AsymmetryFinding& a, const AsymmetryFinding& b) {
                     if (a.partial != b.partial) return a.partial < b.partial;
                     return a.csi < b.csi;
                   });
  return findings;
}

}  // namespace tvdiam
