// tvdiam: total-variation diameter analysis for discrete Bayesian networks.
//
// One subcommand per analysis; all data goes to the chosen output stream,
// all diagnostics to stderr. Exit codes: 0 success, 1 validation/analysis
// error, 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvdiam/dot.hpp"
#include "tvdiam/inference.hpp"
#include "tvdiam/json_io.hpp"
#include "tvdiam/junction_tree.hpp"
#include "tvdiam/propagation.hpp"
#include "tvdiam/refinement.hpp"
#include "tvdiam/report.hpp"
#include "tvdiam/sensitivity.hpp"
#include "tvdiam/variation.hpp"

namespace {

using namespace tvdiam;

// Joint queries refuse to materialize factors beyond this many states unless
// --force lifts the guard; inference cost is worst-case exponential.
constexpr std::size_t kFactorGuard = std::size_t{1} << 24;

struct Options {
  std::string input;
  std::string output;
  std::string format = "csv";
  double row_tolerance = 1e-6;
  bool force = false;
  std::size_t max_trail_length = 12;
  std::size_t max_trails = 1'000'000;
  std::string heuristic = "min-fill";
};

void emit(const Options& options, const std::string& text) {
  if (options.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(options.output, std::ios::binary);
  if (!out) throw Error("cannot write " + options.output);
  out << text;
}

void emit_report_text(const Options& options, const Report& report) {
  if (options.format == "json") {
    emit(options, emit_report(report, ReportFormat::Json));
  } else if (options.format == "csv") {
    emit(options, emit_report(report, ReportFormat::Csv));
  } else {
    throw InvalidQuery("format '" + options.format +
                       "' is not available for this subcommand");
  }
}

NetworkDocument load(const Options& options) {
  NetworkDocument doc = load_network_file(options.input, options.row_tolerance);
  for (const LoadWarning& w : doc.warnings) {
    std::cerr << "warning: " << w.node << ": " << w.message << "\n";
  }
  return doc;
}

int resolve_node(const BayesNet& net, const std::string& name) {
  const int node = net.index_of(name);
  if (node < 0) throw InvalidQuery("no variable named " + name);
  return node;
}

TriangulationHeuristic heuristic_of(const Options& options) {
  if (options.heuristic == "min-fill") return TriangulationHeuristic::MinFill;
  if (options.heuristic == "min-degree") {
    return TriangulationHeuristic::MinDegree;
  }
  throw InvalidQuery("unknown heuristic " + options.heuristic);
}

TrailCaps trail_caps(const Options& options) {
  return {options.max_trail_length, options.max_trails};
}

std::size_t factor_guard(const Options& options) {
  return options.force ? 0 : kFactorGuard;
}

void add_common(CLI::App* cmd, Options& options, bool with_format = true) {
  cmd->add_option("input", options.input, "network file (.bif or .json)")
      ->required();
  cmd->add_option("-o,--output", options.output,
                  "write output here instead of stdout");
  if (with_format) {
    cmd->add_option("--format", options.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "dot"}))
        ->capture_default_str();
  }
  cmd->add_option("--row-tol", options.row_tolerance,
                  "row-sum tolerance applied while loading")
      ->capture_default_str();
}

StrengthMap load_strength_file(const BayesNet& net, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  StrengthMap map;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string parent, child, value;
    if (!std::getline(row, parent, ',') || !std::getline(row, child, ',') ||
        !std::getline(row, value, ',')) {
      throw Error("strength file rows must be parent,child,value");
    }
    if (first && value == "strength") {  // header row
      first = false;
      continue;
    }
    first = false;
    map[{resolve_node(net, parent), resolve_node(net, child)}] =
        std::stod(value);
  }
  return map;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Robustness and dependence analysis of discrete Bayesian networks via "
      "total-variation diameters of their conditional probability tables"};
  app.require_subcommand(1);

  Options options;
  std::function<void()> run;

  // --- validate ------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("validate", "Load and validate a network");
    add_common(cmd, options);
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        emit_report_text(options, validate_report(doc));
      };
    });
  }

  // --- diameters -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "diameters", "Upper (and optionally lower) CPT diameters per node");
    static bool lower = false;
    static bool include_roots = false;
    add_common(cmd, options);
    cmd->add_flag("--lower", lower, "also report lower diameters");
    cmd->add_flag("--include-roots", include_roots,
                  "include single-row (root) CPTs");
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        const auto diameters = node_diameters(doc.net, include_roots);
        if (options.format == "dot") {
          DotAnnotations annotations;
          for (const NodeDiameter& d : diameters) {
            annotations.node_values[d.node] = d.upper.value;
          }
          emit(options, emit_dot(doc.net, annotations));
        } else {
          emit_report_text(options, diameters_report(doc.net, diameters, lower));
        }
      };
    });
  }

  // --- edge-strength ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("edge-strength",
                                   "Strength of every edge of the network");
    add_common(cmd, options);
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        const auto strengths = all_edge_strengths(doc.net);
        if (options.format == "dot") {
          DotAnnotations annotations;
          for (const EdgeStrength& s : strengths) {
            annotations.edge_strengths[s.edge] = s.value;
          }
          emit(options, emit_dot(doc.net, annotations));
        } else {
          emit_report_text(options, edge_strength_report(doc.net, strengths));
        }
      };
    });
  }

  // --- influence -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "influence",
        "Rank every node's influence on a target (MI, DWI, EWI)");
    static std::string target;
    static std::vector<double> w_values{0.1, 0.2, 0.5, 1.0};
    static std::vector<std::string> measures;
    static std::string strengths_path;
    add_common(cmd, options);
    cmd->add_option("--target", target, "target variable")->required();
    cmd->add_option("--w", w_values, "DWI weights in (0,1]")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--measure", measures,
                    "subset of mi,dwi,ewi to report (default: all)")
        ->delimiter(',');
    cmd->add_option("--strengths", strengths_path,
                    "CSV file parent,child,value with user-supplied edge "
                    "strengths for EWI");
    cmd->add_flag("--force", options.force,
                  "run even when inference would exceed the factor guard");
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        StrengthMap user;
        const StrengthMap* strengths = nullptr;
        if (!strengths_path.empty()) {
          user = load_strength_file(doc.net, strengths_path);
          strengths = &user;
        }
        InfluenceRanking ranking = influence_ranking(
            doc.net, resolve_node(doc.net, target), w_values,
            trail_caps(options), factor_guard(options), strengths);
        for (const InfluenceRow& row : ranking.rows) {
          if (row.truncated) {
            std::cerr << "warning: trail caps hit for "
                      << doc.net.variable(row.node).name
                      << "; its DWI/EWI values are partial\n";
          }
        }
        Report report = influence_report(doc.net, ranking);
        if (!measures.empty()) {
          std::set<std::string> wanted(measures.begin(), measures.end());
          for (const std::string& m : wanted) {
            if (m != "mi" && m != "dwi" && m != "ewi") {
              throw InvalidQuery("unknown measure " + m);
            }
          }
          Report filtered;
          filtered.kind = report.kind;
          std::vector<std::size_t> keep;
          for (std::size_t c = 0; c < report.columns.size(); ++c) {
            const std::string& name = report.columns[c];
            const bool is_mi = name == "mi" || name == "rank_mi";
            const bool is_dwi = name.rfind("dwi_w=", 0) == 0 ||
                                name.rfind("rank_dwi_w=", 0) == 0;
            const bool is_ewi = name == "ewi" || name == "rank_ewi";
            bool take = name == "node" || name == "truncated";
            if (is_mi && wanted.count("mi")) take = true;
            if (is_dwi && wanted.count("dwi")) take = true;
            if (is_ewi && wanted.count("ewi")) take = true;
            if (take) {
              keep.push_back(c);
              filtered.columns.push_back(name);
            }
          }
          for (const auto& row : report.rows) {
            std::vector<ReportCell> cells;
            for (std::size_t c : keep) cells.push_back(row[c]);
            filtered.rows.push_back(std::move(cells));
          }
          report = std::move(filtered);
        }
        emit_report_text(options, report);
      };
    });
  }

  // --- trails ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "trails", "Active simple trails between two variables");
    static std::string from, to;
    add_common(cmd, options);
    cmd->add_option("--from", from, "start variable")->required();
    cmd->add_option("--to", to, "end variable")->required();
    cmd->add_option("--max-length", options.max_trail_length,
                    "trail length cap")
        ->capture_default_str();
    cmd->add_option("--max-trails", options.max_trails, "trail count cap")
        ->capture_default_str();
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        TrailEnumeration trails = active_simple_trails(
            doc.net.dag(), resolve_node(doc.net, from),
            resolve_node(doc.net, to), trail_caps(options));
        if (trails.truncated) {
          std::cerr << "warning: trail caps hit; enumeration is partial\n";
        }
        emit_report_text(options, trails_report(doc.net, trails));
      };
    });
  }

  // --- jtree -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "jtree", "Junction tree: cliques, separators, tree edges");
    add_common(cmd, options);
    cmd->add_option("--heuristic", options.heuristic,
                    "triangulation heuristic")
        ->check(CLI::IsMember({"min-fill", "min-degree"}))
        ->capture_default_str();
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        JunctionTree jt = junction_tree(doc.net, heuristic_of(options));
        if (options.format == "dot") {
          emit(options, emit_junction_tree_dot(doc.net, jt, nullptr));
        } else {
          emit_report_text(options, jtree_report(doc.net, jt));
        }
      };
    });
  }

  // --- impact ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "impact",
        "Error-propagation impact of junction-tree cliques on a target");
    static std::string target;
    static std::string mode = "bounded";
    static std::string source;
    static bool allow_non_leaf = false;
    add_common(cmd, options);
    cmd->add_option("--target", target, "output variable (no children)")
        ->required();
    cmd->add_option("--mode", mode, "factor computation mode")
        ->check(CLI::IsMember({"exact", "bounded"}))
        ->capture_default_str();
    cmd->add_option("--source", source,
                    "comma-separated clique members; reports the single "
                    "chain instead of the full map");
    cmd->add_option("--heuristic", options.heuristic,
                    "triangulation heuristic")
        ->check(CLI::IsMember({"min-fill", "min-degree"}))
        ->capture_default_str();
    cmd->add_flag("--allow-non-leaf", allow_non_leaf,
                  "permit a target that has children");
    cmd->add_flag("--force", options.force,
                  "run even when inference would exceed the factor guard");
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        JunctionTree jt = junction_tree(doc.net, heuristic_of(options));
        const ImpactMode impact_mode =
            mode == "exact" ? ImpactMode::Exact : ImpactMode::Bounded;
        const std::size_t guard =
            impact_mode == ImpactMode::Exact ? factor_guard(options) : 0;
        const int target_node = resolve_node(doc.net, target);

        if (!source.empty()) {
          std::set<int> members;
          std::istringstream stream(source);
          std::string name;
          while (std::getline(stream, name, ',')) {
            members.insert(resolve_node(doc.net, name));
          }
          const int clique = jt.find_clique(members);
          if (clique < 0) throw CliqueNotFound(source);
          ImpactChain chain = impact(doc.net, jt, clique, target_node,
                                     impact_mode, allow_non_leaf, guard);
          emit_report_text(options, impact_chain_report(doc.net, jt, chain));
          return;
        }

        ImpactMap map = impact_map(doc.net, jt, target_node, impact_mode,
                                   allow_non_leaf, guard);
        if (options.format == "dot") {
          std::map<int, double> values;
          for (std::size_t c = 0; c < map.impacts.size(); ++c) {
            values[static_cast<int>(c)] = map.impacts[c].impact;
          }
          emit(options, emit_junction_tree_dot(doc.net, jt, &values));
        } else {
          emit_report_text(options, impact_map_report(doc.net, jt, map));
        }
      };
    });
  }

  // --- amalgamate ------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "amalgamate", "Merge two levels of a variable, or rank candidates");
    static std::string node;
    static std::vector<std::string> levels;
    static bool suggest = false;
    add_common(cmd, options);
    cmd->add_option("--node", node, "variable whose levels to merge")
        ->required();
    cmd->add_option("--levels", levels, "the two levels to merge")
        ->delimiter(',')
        ->expected(2);
    cmd->add_flag("--suggest", suggest, "rank candidate pairs instead");
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        const int variable = resolve_node(doc.net, node);
        if (suggest != levels.empty()) {
          throw InvalidQuery("pass exactly one of --levels a,b or --suggest");
        }
        if (suggest) {
          emit_report_text(options, suggestion_report(
                                        doc.net,
                                        suggest_amalgamation(doc.net, variable)));
        } else {
          AmalgamationReport merge =
              amalgamate_levels(doc.net, variable, levels[0], levels[1]);
          std::cerr << "note: " << merge.note << "\n";
          emit_report_text(options, amalgamation_report(doc.net, merge));
        }
      };
    });
  }

  // --- asymmetry ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "asymmetry",
        "Context-specific and partial independence indices for a node");
    static std::string node;
    static double threshold = 1.0;
    add_common(cmd, options);
    cmd->add_option("--node", node, "node whose CPT to scan")->required();
    cmd->add_option("--threshold", threshold,
                    "report findings with an index at most this")
        ->capture_default_str();
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        emit_report_text(
            options,
            asymmetry_report(doc.net,
                             asymmetry_scan(doc.net,
                                            resolve_node(doc.net, node),
                                            threshold)));
      };
    });
  }

  // --- convert -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("convert",
                                   "Serialize a network as canonical BIF or JSON");
    static std::string to = "json";
    add_common(cmd, options, /*with_format=*/false);
    cmd->add_option("--to", to, "target format")
        ->check(CLI::IsMember({"json", "bif"}))
        ->capture_default_str();
    cmd->callback([&]() {
      run = [&]() {
        NetworkDocument doc = load(options);
        emit(options, to == "json" ? to_network_json(doc) : to_bif(doc));
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
