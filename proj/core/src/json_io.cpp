#include "tvdiam/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tvdiam {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "tvdiam/1";

}  // namespace

NetworkDocument parse_network_json(const std::string& text,
                                   double row_tolerance) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(1, e.byte, e.what());
  }

  try {
    if (!j.contains("schema") || j["schema"].get<std::string>() != kSchema) {
      throw Error(std::string("expected \"schema\": \"") + kSchema + "\"");
    }

    NetworkDocument doc;
    doc.format = NetworkFormat::Json;
    doc.name = j.value("name", std::string("unknown"));

    std::vector<DiscreteVariable> variables;
    for (const auto& jv : j.at("variables")) {
      DiscreteVariable v;
      v.name = jv.at("name").get<std::string>();
      for (const auto& level : jv.at("levels")) {
        v.levels.push_back(level.get<std::string>());
      }
      v.ordinal = jv.value("ordinal", false);
      variables.push_back(std::move(v));
    }

    auto index_of = [&variables](const std::string& name) {
      for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return static_cast<int>(i);
      }
      throw Error("unknown variable " + name);
    };

    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      edges.push_back({index_of(je.at(0).get<std::string>()),
                       index_of(je.at(1).get<std::string>())});
    }

    std::vector<Cpt> cpts;
    for (const auto& jc : j.at("cpts")) {
      const DiscreteVariable& child = variables[index_of(jc.at("child").get<std::string>())];
      std::vector<DiscreteVariable> parents;
      for (const auto& p : jc.at("parents")) {
        parents.push_back(variables[index_of(p.get<std::string>())]);
      }
      std::vector<std::vector<double>> rows;
      for (const auto& jr : jc.at("rows")) {
        rows.push_back(jr.get<std::vector<double>>());
      }
      cpts.emplace_back(child, std::move(parents), Matrix::from_rows(rows),
                        row_tolerance);
    }

    doc.net = build_network(std::move(variables), std::move(edges),
                            std::move(cpts), &doc.warnings);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed network json: ") + e.what());
  }
}

std::string to_network_json(const NetworkDocument& doc) {
  const BayesNet& net = doc.net;
  ordered_json j;
  j["schema"] = kSchema;
  j["name"] = doc.name;

  j["variables"] = ordered_json::array();
  for (const auto& v : net.variables()) {
    ordered_json jv;
    jv["name"] = v.name;
    jv["levels"] = v.levels;
    jv["ordinal"] = v.ordinal;
    j["variables"].push_back(std::move(jv));
  }

  j["edges"] = ordered_json::array();
  for (const Edge& e : net.dag().edges) {
    j["edges"].push_back(ordered_json::array(
        {net.variable(e.parent).name, net.variable(e.child).name}));
  }

  j["cpts"] = ordered_json::array();
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    const Cpt& cpt = net.cpt(static_cast<int>(i));
    ordered_json jc;
    jc["child"] = cpt.child().name;
    jc["parents"] = ordered_json::array();
    for (const auto& p : cpt.parents()) jc["parents"].push_back(p.name);
    jc["rows"] = ordered_json::array();
    for (std::size_t r = 0; r < cpt.row_count(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < cpt.column_count(); ++c) {
        row.push_back(cpt.table().at(r, c));
      }
      jc["rows"].push_back(std::move(row));
    }
    j["cpts"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

NetworkDocument load_network_file(const std::string& path,
                                  double row_tolerance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  bool looks_like_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (!looks_like_json) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      looks_like_json = (c == '{');
      break;
    }
  }
  return looks_like_json ? parse_network_json(text, row_tolerance)
                         : parse_bif(text, row_tolerance);
}

}  // namespace tvdiam
