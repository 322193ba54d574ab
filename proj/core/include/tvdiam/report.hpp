#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tvdiam/bif.hpp"
#include "tvdiam/junction_tree.hpp"
#include "tvdiam/propagation.hpp"
#include "tvdiam/refinement.hpp"
#include "tvdiam/sensitivity.hpp"
#include "tvdiam/variation.hpp"

namespace tvdiam {

// Uniform tabular report: every CLI analysis flattens into one of these and
// is emitted by the same two renderers, which keeps output byte-stable.
using ReportCell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct Report {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
};

// CSV with a header row; reals fixed at 6 decimals; cells quoted only when
// they contain a delimiter.
std::string to_csv(const Report& report);

// Versioned JSON ("schema": "tvdiam/1"); reals keep full precision so the
// output reparses to equal values.
std::string to_json_text(const Report& report);

enum class ReportFormat { Csv, Json };

inline std::string emit_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Csv ? to_csv(report) : to_json_text(report);
}

// Rendering of a parent assignment as "a=x;b=y" in parent order.
std::string context_string(const BayesNet& net, const ParentAssignment& assignment);

Report diameters_report(const BayesNet& net,
                        const std::vector<NodeDiameter>& diameters,
                        bool with_lower);
Report edge_strength_report(const BayesNet& net,
                            const std::vector<EdgeStrength>& strengths);
Report influence_report(const BayesNet& net, const InfluenceRanking& ranking);
Report trails_report(const BayesNet& net, const TrailEnumeration& trails);
Report jtree_report(const BayesNet& net, const JunctionTree& jt);
Report impact_map_report(const BayesNet& net, const JunctionTree& jt,
                         const ImpactMap& map);
Report impact_chain_report(const BayesNet& net, const JunctionTree& jt,
                           const ImpactChain& chain);
Report amalgamation_report(const BayesNet& net, const AmalgamationReport& merge);
Report suggestion_report(const BayesNet& net,
                         const std::vector<AmalgamationSuggestion>& suggestions);
Report asymmetry_report(const BayesNet& net,
                        const std::vector<AsymmetryFinding>& findings);
Report validate_report(const NetworkDocument& doc);

}  // namespace tvdiam
