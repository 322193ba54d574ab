#include "tvdiam/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace tvdiam {

namespace {

std::string fixed6(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string cell_to_csv(const ReportCell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* s = std::get_if<std::string>(&cell)) return csv_escape(*s);
  if (const auto* d = std::get_if<double>(&cell)) return fixed6(*d);
  return std::to_string(std::get<std::int64_t>(cell));
}

std::string clique_string(const BayesNet& net, const Clique& clique) {
  std::string out;
  for (int v : clique) {
    if (!out.empty()) out += ";";
    out += net.variable(v).name;
  }
  return out;
}

}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out << ",";
    out << csv_escape(report.columns[i]);
  }
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << cell_to_csv(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_json_text(const Report& report) {
  nlohmann::ordered_json j;
  j["schema"] = "tvdiam/1";
  j["kind"] = report.kind;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json jr;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const ReportCell& cell = row[i];
      if (std::holds_alternative<std::monostate>(cell)) {
        jr[report.columns[i]] = nullptr;
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        jr[report.columns[i]] = *s;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        jr[report.columns[i]] = *d;
      } else {
        jr[report.columns[i]] = std::get<std::int64_t>(cell);
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

std::string context_string(const BayesNet& net,
                           const ParentAssignment& assignment) {
  std::string out;
  for (const auto& [name, level] : assignment) {
    if (!out.empty()) out += ";";
    const int node = net.index_of(name);
    out += name + "=" + net.variable(node).levels[level];
  }
  return out;
}

Report diameters_report(const BayesNet& net,
                        const std::vector<NodeDiameter>& diameters,
                        bool with_lower) {
  Report report;
  report.kind = "diameters";
  report.columns = {"node", "diameter"};
  if (with_lower) report.columns.push_back("lower_diameter");
  for (const NodeDiameter& d : diameters) {
    std::vector<ReportCell> row;
    row.emplace_back(net.variable(d.node).name);
    row.emplace_back(d.upper.value);
    if (with_lower) {
      if (d.has_lower) row.emplace_back(d.lower.value);
      else row.emplace_back(std::monostate{});
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report edge_strength_report(const BayesNet& net,
                            const std::vector<EdgeStrength>& strengths) {
  Report report;
  report.kind = "edge-strength";
  report.columns = {"parent", "child", "strength", "witness_context",
                    "witness_levels"};
  for (const EdgeStrength& s : strengths) {
    const DiscreteVariable& parent = net.variable(s.edge.parent);
    std::vector<ReportCell> row;
    row.emplace_back(parent.name);
    row.emplace_back(net.variable(s.edge.child).name);
    row.emplace_back(s.value);
    row.emplace_back(context_string(net, s.witness_context));
    row.emplace_back(parent.levels[s.witness_rows.first] + "|" +
                     parent.levels[s.witness_rows.second]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report influence_report(const BayesNet& net, const InfluenceRanking& ranking) {
  Report report;
  report.kind = "influence";
  report.columns = {"node", "mi", "rank_mi"};
  for (double w : ranking.w_values) {
    report.columns.push_back("dwi_w=" + fixed6(w));
    report.columns.push_back("rank_dwi_w=" + fixed6(w));
  }
  report.columns.push_back("ewi");
  report.columns.push_back("rank_ewi");
  report.columns.push_back("truncated");

  for (const InfluenceRow& r : ranking.rows) {
    std::vector<ReportCell> row;
    row.emplace_back(net.variable(r.node).name);
    row.emplace_back(r.mi);
    row.emplace_back(r.rank_mi);
    for (std::size_t wi = 0; wi < ranking.w_values.size(); ++wi) {
      row.emplace_back(r.dwi[wi]);
      row.emplace_back(r.rank_dwi[wi]);
    }
    row.emplace_back(r.ewi);
    row.emplace_back(r.rank_ewi);
    row.emplace_back(static_cast<std::int64_t>(r.truncated ? 1 : 0));
    report.rows.push_back(std::move(row));
  }

  // Footer: Spearman correlation of each measure's ranks against MI's.
  std::vector<ReportCell> footer;
  footer.emplace_back(std::string("[spearman_vs_mi]"));
  footer.emplace_back(ranking.spearman_mi);
  footer.emplace_back(std::monostate{});
  for (std::size_t wi = 0; wi < ranking.w_values.size(); ++wi) {
    footer.emplace_back(ranking.spearman_dwi[wi]);
    footer.emplace_back(std::monostate{});
  }
  footer.emplace_back(ranking.spearman_ewi);
  footer.emplace_back(std::monostate{});
  footer.emplace_back(std::monostate{});
  report.rows.push_back(std::move(footer));
  return report;
}

Report trails_report(const BayesNet& net, const TrailEnumeration& trails) {
  Report report;
  report.kind = "trails";
  report.columns = {"index", "length", "trail", "truncated"};
  for (std::size_t i = 0; i < trails.trails.size(); ++i) {
    const Trail& t = trails.trails[i];
    std::string rendered = net.variable(t.nodes.front()).name;
    for (std::size_t k = 0; k < t.length(); ++k) {
      rendered += t.forward[k] ? "->" : "<-";
      rendered += net.variable(t.nodes[k + 1]).name;
    }
    std::vector<ReportCell> row;
    row.emplace_back(static_cast<std::int64_t>(i));
    row.emplace_back(static_cast<std::int64_t>(t.length()));
    row.emplace_back(rendered);
    row.emplace_back(static_cast<std::int64_t>(trails.truncated ? 1 : 0));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report jtree_report(const BayesNet& net, const JunctionTree& jt) {
  Report report;
  report.kind = "jtree";
  report.columns = {"clique", "members", "separator", "parent_clique"};
  for (std::size_t i = 0; i < jt.cliques.size(); ++i) {
    std::vector<ReportCell> row;
    row.emplace_back(static_cast<std::int64_t>(i));
    row.emplace_back(clique_string(net, jt.cliques[i]));
    if (i == 0) {
      row.emplace_back(std::monostate{});
      row.emplace_back(std::monostate{});
    } else {
      row.emplace_back(clique_string(net, jt.separators[i]));
      row.emplace_back(static_cast<std::int64_t>(jt.tree_parent[i]));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report impact_map_report(const BayesNet& net, const JunctionTree& jt,
                         const ImpactMap& map) {
  Report report;
  report.kind = "impact";
  report.columns = {"clique", "members", "impact", "mode", "degenerate",
                    "overlapping_separators"};
  const std::string mode =
      map.mode == ImpactMode::Exact ? "exact" : "bounded";
  for (std::size_t i = 0; i < map.impacts.size(); ++i) {
    const ImpactChain& chain = map.impacts[i];
    std::vector<ReportCell> row;
    row.emplace_back(static_cast<std::int64_t>(i));
    row.emplace_back(clique_string(net, jt.cliques[i]));
    row.emplace_back(chain.impact);
    row.emplace_back(mode);
    row.emplace_back(static_cast<std::int64_t>(chain.degenerate ? 1 : 0));
    row.emplace_back(static_cast<std::int64_t>(chain.chain.clean ? 0 : 1));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report impact_chain_report(const BayesNet& net, const JunctionTree& jt,
                           const ImpactChain& chain) {
  Report report;
  report.kind = "impact-chain";
  report.columns = {"step",   "separator", "starred", "factor",
                    "flags",  "impact"};

  std::vector<ReportCell> source;
  source.emplace_back(std::string("source"));
  source.emplace_back(clique_string(net, jt.cliques[chain.source_clique]));
  source.emplace_back(std::monostate{});
  source.emplace_back(std::monostate{});
  source.emplace_back(chain.chain.clean ? std::string("")
                                        : std::string("overlapping_separators"));
  source.emplace_back(std::monostate{});
  report.rows.push_back(std::move(source));

  for (std::size_t k = 0; k < chain.links.size(); ++k) {
    const ChainLink& link = chain.links[k];
    std::vector<ReportCell> row;
    row.emplace_back("link " + std::to_string(k + 1));
    row.emplace_back(clique_string(net, link.separator));
    row.emplace_back(clique_string(net, link.starred));
    row.emplace_back(link.diameter);
    std::string flags;
    if (link.degenerate) flags += "degenerate";
    if (link.fallback_to_one) flags += flags.empty() ? "fallback" : ";fallback";
    if (link.had_uniform_rows) {
      flags += flags.empty() ? "uniform_rows" : ";uniform_rows";
    }
    row.emplace_back(flags);
    row.emplace_back(std::monostate{});
    report.rows.push_back(std::move(row));
  }

  std::vector<ReportCell> target;
  target.emplace_back(std::string("target"));
  target.emplace_back(net.variable(chain.target_variable).name);
  target.emplace_back(chain.chain.starred.empty()
                          ? std::string("")
                          : clique_string(net, chain.chain.starred.back()));
  target.emplace_back(chain.target_diameter);
  target.emplace_back(std::string(""));
  target.emplace_back(chain.impact);
  report.rows.push_back(std::move(target));
  return report;
}

Report amalgamation_report(const BayesNet& net,
                           const AmalgamationReport& merge) {
  Report report;
  report.kind = "amalgamate";
  report.columns = {"child", "diameter_before", "diameter_after"};
  for (const ChildDiameterDelta& delta : merge.children) {
    std::vector<ReportCell> row;
    row.emplace_back(net.variable(delta.child).name);
    row.emplace_back(delta.before);
    row.emplace_back(delta.after);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report suggestion_report(const BayesNet& net,
                         const std::vector<AmalgamationSuggestion>& suggestions) {
  Report report;
  report.kind = "amalgamate-suggest";
  report.columns = {"level_a", "level_b",         "score",
                    "child",   "diameter_before", "diameter_after"};
  for (const AmalgamationSuggestion& s : suggestions) {
    if (s.children.empty()) {
      std::vector<ReportCell> row;
      row.emplace_back(s.level_a);
      row.emplace_back(s.level_b);
      row.emplace_back(s.score);
      row.emplace_back(std::monostate{});
      row.emplace_back(std::monostate{});
      row.emplace_back(std::monostate{});
      report.rows.push_back(std::move(row));
      continue;
    }
    for (const ChildDiameterDelta& delta : s.children) {
      std::vector<ReportCell> row;
      row.emplace_back(s.level_a);
      row.emplace_back(s.level_b);
      row.emplace_back(s.score);
      row.emplace_back(net.variable(delta.child).name);
      row.emplace_back(delta.before);
      row.emplace_back(delta.after);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

Report asymmetry_report(const BayesNet& net,
                        const std::vector<AsymmetryFinding>& findings) {
  Report report;
  report.kind = "asymmetry";
  report.columns = {"parent",        "context", "csi_index",
                    "partial_index", "partial_witness"};
  for (const AsymmetryFinding& f : findings) {
    const DiscreteVariable& parent = net.variable(f.varying_parent);
    std::vector<ReportCell> row;
    row.emplace_back(parent.name);
    row.emplace_back(context_string(net, f.context));
    row.emplace_back(f.csi);
    row.emplace_back(f.partial);
    row.emplace_back(parent.levels[f.partial_witness.first] + "|" +
                     parent.levels[f.partial_witness.second]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Report validate_report(const NetworkDocument& doc) {
  Report report;
  report.kind = "validate";
  report.columns = {"node", "levels", "parents", "cpt_rows",
                    "renormalized_rows"};
  const BayesNet& net = doc.net;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const Cpt& cpt = net.cpt(static_cast<int>(i));
    std::vector<ReportCell> row;
    row.emplace_back(net.variable(static_cast<int>(i)).name);
    row.emplace_back(static_cast<std::int64_t>(cpt.column_count()));
    row.emplace_back(static_cast<std::int64_t>(cpt.parents().size()));
    row.emplace_back(static_cast<std::int64_t>(cpt.row_count()));
    row.emplace_back(static_cast<std::int64_t>(cpt.renormalized_rows().size()));
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tvdiam
