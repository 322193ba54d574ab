#include "tvdiam/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "tvdiam/parallel.hpp"

namespace tvdiam {

EdgeStrength edge_strength(const BayesNet& net, Edge edge) {
  if (!net.dag().has_edge(edge.parent, edge.child)) {
    throw NotAnEdge(net.variable(edge.parent).name,
                    net.variable(edge.child).name);
  }
  const Cpt& cpt = net.cpt(edge.child);
  const std::string& vary = net.variable(edge.parent).name;

  std::vector<DiscreteVariable> others;
  for (const auto& p : cpt.parents()) {
    if (p.name != vary) others.push_back(p);
  }
  std::vector<std::size_t> radices;
  for (const auto& p : others) radices.push_back(p.cardinality());

  EdgeStrength best;
  best.edge = edge;
  best.value = -1.0;
  const std::size_t contexts = mixed_radix_capacity(radices);
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    auto digits = mixed_radix_decode(ctx, radices);
    ParentAssignment context;
    for (std::size_t i = 0; i < others.size(); ++i) {
      context[others[i].name] = static_cast<int>(digits[i]);
    }
    const DiameterResult d = upper_diameter(sub_cpt(cpt, context));
    if (d.value > best.value) {
      best.value = d.value;
      best.witness_context = context;
      best.witness_rows = d.witness;
    }
  }
  return best;
}

std::vector<EdgeStrength> all_edge_strengths(const BayesNet& net) {
  std::vector<EdgeStrength> out;
  out.reserve(net.dag().edges.size());
  for (const Edge& e : net.dag().edges) out.push_back(edge_strength(net, e));
  return out;
}

StrengthMap strength_map(const std::vector<EdgeStrength>& strengths) {
  StrengthMap map;
  for (const EdgeStrength& s : strengths) map[s.edge] = s.value;
  return map;
}

namespace {

struct TrailSearch {
  const Dag& dag;
  int to;
  const TrailCaps& caps;
  TrailEnumeration result;

  std::vector<int> nodes;
  std::vector<bool> forward;
  std::vector<bool> on_path;

  // Neighbors in the skeleton, ascending, with the orientation of each link.
  std::vector<std::vector<std::pair<int, bool>>> skeleton;

  TrailSearch(const Dag& d, int from, int target, const TrailCaps& c)
      : dag(d), to(target), caps(c), on_path(d.node_count, false) {
    skeleton.resize(dag.node_count);
    for (const Edge& e : dag.edges) {
      skeleton[e.parent].emplace_back(e.child, true);
      skeleton[e.child].emplace_back(e.parent, false);
    }
    for (auto& adj : skeleton) std::sort(adj.begin(), adj.end());
    nodes.push_back(from);
    on_path[from] = true;
  }

  // `arrived_forward` tells whether the last step entered the current node
  // head-on; an interior node is blocked when two heads meet there.
  void extend(bool have_incoming, bool arrived_forward) {
    const int v = nodes.back();
    if (v == to && nodes.size() > 1) {
      if (result.trails.size() >= caps.max_trails) {
        result.truncated = true;
        return;
      }
      result.trails.push_back({nodes, forward});
      return;
    }
    if (forward.size() >= caps.max_length) {
      if (v != to) result.truncated = true;
      return;
    }
    for (auto [next, step_forward] : skeleton[v]) {
      if (on_path[next]) continue;
      // v becomes an interior node of the extended trail: collider iff the
      // incoming step points at v and the outgoing one leaves v backwards.
      if (have_incoming && arrived_forward && !step_forward) continue;
      nodes.push_back(next);
      forward.push_back(step_forward);
      on_path[next] = true;
      extend(true, step_forward);
      on_path[next] = false;
      forward.pop_back();
      nodes.pop_back();
      if (result.truncated && result.trails.size() >= caps.max_trails) return;
    }
  }
};

}  // namespace

TrailEnumeration active_simple_trails(const Dag& dag, int from, int to,
                                      const TrailCaps& caps) {
  if (from == to) throw InvalidQuery("trail endpoints must differ");
  TrailSearch search(dag, from, to, caps);
  search.extend(false, false);
  TrailEnumeration out = std::move(search.result);
  std::sort(out.trails.begin(), out.trails.end(),
            [](const Trail& a, const Trail& b) {
              if (a.nodes.size() != b.nodes.size()) {
                return a.nodes.size() < b.nodes.size();
              }
              return a.nodes < b.nodes;
            });
  return out;
}

InfluenceValue dwi(const Dag& dag, int from, int to, double w,
                   const TrailCaps& caps) {
  if (!(w > 0.0 && w <= 1.0)) throw WOutOfRange(w);
  TrailEnumeration trails = active_simple_trails(dag, from, to, caps);
  InfluenceValue out;
  out.truncated = trails.truncated;
  for (const Trail& t : trails.trails) {
    out.value += std::pow(w, static_cast<double>(t.length()));
  }
  return out;
}

InfluenceValue ewi(const Dag& dag, const StrengthMap& strengths, int from,
                   int to, const TrailCaps& caps) {
  TrailEnumeration trails = active_simple_trails(dag, from, to, caps);
  InfluenceValue out;
  out.truncated = trails.truncated;
  for (const Trail& t : trails.trails) {
    double product = 1.0;
    for (std::size_t k = 0; k < t.length(); ++k) {
      const int a = t.nodes[k];
      const int b = t.nodes[k + 1];
      const Edge e = t.forward[k] ? Edge{a, b} : Edge{b, a};
      auto it = strengths.find(e);
      if (it == strengths.end()) {
        throw MissingStrength(std::to_string(e.parent),
                              std::to_string(e.child));
      }
      product *= it->second;
    }
    // The trail's strength product is raised to the trail length, exactly as
    // the influence measure defines it.
    out.value += std::pow(product, static_cast<double>(t.length()));
  }
  return out;
}

std::vector<double> descending_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(const std::vector<double>& ranks_a,
                const std::vector<double>& ranks_b) {
  if (ranks_a.size() != ranks_b.size()) {
    throw LengthMismatch(ranks_a.size(), ranks_b.size());
  }
  if (ranks_a == ranks_b) return 1.0;
  const std::size_t n = ranks_a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += ranks_a[i];
    mean_b += ranks_b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ranks_a[i] - mean_a;
    const double db = ranks_b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

InfluenceRanking influence_ranking(const BayesNet& net, int target,
                                   const std::vector<double>& w_values,
                                   const TrailCaps& caps,
                                   std::size_t max_factor_states,
                                   const StrengthMap* strengths) {
  if (target < 0 || target >= static_cast<int>(net.node_count())) {
    throw InvalidQuery("target variable out of range");
  }

  StrengthMap computed;
  if (!strengths) {
    computed = strength_map(all_edge_strengths(net));
    strengths = &computed;
  }

  InfluenceRanking ranking;
  ranking.target = target;
  ranking.w_values = w_values;

  std::vector<int> nodes;
  for (int node = 0; node < static_cast<int>(net.node_count()); ++node) {
    if (node != target) nodes.push_back(node);
  }
  ranking.rows.resize(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) {
    const int node = nodes[k];
    InfluenceRow row;
    row.node = node;
    row.mi = mutual_information(net, node, target, max_factor_states);
    for (double w : w_values) {
      InfluenceValue v = dwi(net.dag(), node, target, w, caps);
      row.dwi.push_back(v.value);
      row.truncated = row.truncated || v.truncated;
    }
    InfluenceValue e = ewi(net.dag(), *strengths, node, target, caps);
    row.ewi = e.value;
    row.truncated = row.truncated || e.truncated;
    ranking.rows[k] = std::move(row);
  });

  auto column = [&](auto get) {
    std::vector<double> values;
    values.reserve(ranking.rows.size());
    for (const InfluenceRow& row : ranking.rows) values.push_back(get(row));
    return values;
  };

  const std::vector<double> mi_ranks = column([](const InfluenceRow& r) { return r.mi; });
  const std::vector<double> rank_mi = descending_ranks(mi_ranks);
  for (std::size_t i = 0; i < ranking.rows.size(); ++i) {
    ranking.rows[i].rank_mi = rank_mi[i];
  }
  ranking.spearman_mi = spearman(rank_mi, rank_mi);

  for (std::size_t wi = 0; wi < w_values.size(); ++wi) {
    const std::vector<double> ranks = descending_ranks(
        column([&](const InfluenceRow& r) { return r.dwi[wi]; }));
    for (std::size_t i = 0; i < ranking.rows.size(); ++i) {
      ranking.rows[i].rank_dwi.push_back(ranks[i]);
    }
    ranking.spearman_dwi.push_back(spearman(ranks, rank_mi));
  }

  const std::vector<double> ewi_ranks =
      descending_ranks(column([](const InfluenceRow& r) { return r.ewi; }));
  for (std::size_t i = 0; i < ranking.rows.size(); ++i) {
    ranking.rows[i].rank_ewi = ewi_ranks[i];
  }
  ranking.spearman_ewi = spearman(ewi_ranks, rank_mi);

  return ranking;
}

}  // namespace tvdiam
