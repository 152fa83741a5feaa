#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbeon/fiber.hpp"
#include "mbeon/qot.hpp"
#include "mbeon/rng.hpp"

namespace mbeon {

struct NodeSpec {
  std::string id;
  std::string name;
  bool core = false;
  double population = 0.0;  // demand-bias weight, arbitrary units
};

struct SpanInfo {
  double length_km = 0.0;
  double lumped_loss_db = 0.0;  // connectors + splices, drawn at load time
};

struct LinkSpec {
  std::size_t a = 0;
  std::size_t b = 0;
  double length_km = 0.0;
  std::vector<SpanInfo> spans;
  std::map<std::string, AmplifierSpec> amplifiers;

  [[nodiscard]] double average_span_km() const {
    double s = 0.0;
    for (const auto& sp : spans) s += sp.length_km;
    return s / static_cast<double>(spans.size());
  }
  [[nodiscard]] double average_lumped_db() const {
    double s = 0.0;
    for (const auto& sp : spans) s += sp.lumped_loss_db;
    return s / static_cast<double>(spans.size());
  }
};

struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  [[nodiscard]] std::size_t degree(std::size_t node) const {
    std::size_t d = 0;
    for (const auto& l : links)
      if (l.a == node || l.b == node) ++d;
    return d;
  }

  [[nodiscard]] std::vector<std::size_t> core_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].core) out.push_back(i);
    return out;
  }

  [[nodiscard]] std::optional<std::size_t> node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].id == id) return i;
    return std::nullopt;
  }

  /// (neighbor, link index) pairs, sorted by neighbor then link index.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> neighbors(std::size_t node) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t li = 0; li < links.size(); ++li) {
      if (links[li].a == node) out.emplace_back(links[li].b, li);
      if (links[li].b == node) out.emplace_back(links[li].a, li);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline double draw_lumped_loss_db(Rng& rng, double span_km, const PenaltyConfig& pen) {
  double loss = rng.uniform(pen.connector_loss_db.first, pen.connector_loss_db.second) +
                rng.uniform(pen.connector_loss_db.first, pen.connector_loss_db.second);
  auto sections = static_cast<std::size_t>(std::max(1.0, std::round(span_km / pen.splice_section_km)));
  for (std::size_t s = 0; s < sections; ++s)
    loss += rng.uniform(pen.splice_loss_db_per_km.first, pen.splice_loss_db_per_km.second) *
            pen.splice_section_km;
  return loss;
}

}  // namespace detail

/// Parses and validates a topology document. Per-span lumped losses are
/// drawn here, from the run seed, so a (file, seed) pair always yields the
/// same physical network.
inline Topology parse_topology(const nlohmann::json& doc, const PenaltyConfig& penalties,
                               std::uint64_t seed,
                               const std::map<std::string, AmplifierSpec>& default_amps) {
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw std::invalid_argument("topology: missing \"nodes\" array");
  if (!doc.contains("links") || !doc["links"].is_array())
    throw std::invalid_argument("topology: missing \"links\" array");

  Topology topo;
  for (const auto& jn : doc["nodes"]) {
    if (!jn.contains("id")) throw std::invalid_argument("topology: node without \"id\"");
    NodeSpec n;
    n.id = jn["id"].get<std::string>();
    n.name = jn.value("name", n.id);
    n.core = jn.value("core", false);
    n.population = jn.value("population", 1.0);
    if (topo.node_index(n.id))
      throw std::invalid_argument("topology: duplicate node id \"" + n.id + "\"");
    topo.nodes.push_back(std::move(n));
  }

  Rng rng(seed);
  for (const auto& jl : doc["links"]) {
    for (const char* key : {"a", "b", "length_km"})
      if (!jl.contains(key))
        throw std::invalid_argument(std::string("topology: link missing \"") + key + "\"");
    LinkSpec l;
    auto a = topo.node_index(jl["a"].get<std::string>());
    auto b = topo.node_index(jl["b"].get<std::string>());
    if (!a || !b) throw std::invalid_argument("topology: link references unknown node");
    l.a = *a;
    l.b = *b;
    if (l.a == l.b) throw std::invalid_argument("topology: self-loop link");
    l.length_km = jl["length_km"].get<double>();
    if (l.length_km <= 0.0) throw std::invalid_argument("topology: zero-length link");
    if (!jl.contains("spans_km") || !jl["spans_km"].is_array() || jl["spans_km"].empty())
      throw std::invalid_argument("topology: link missing \"spans_km\"");
    double sum = 0.0;
    for (const auto& js : jl["spans_km"]) {
      SpanInfo sp;
      sp.length_km = js.get<double>();
      if (sp.length_km <= 0.0) throw std::invalid_argument("topology: non-positive span length");
      sp.lumped_loss_db = detail::draw_lumped_loss_db(rng, sp.length_km, penalties);
      sum += sp.length_km;
      l.spans.push_back(sp);
    }
    if (std::abs(sum - l.length_km) > 1.0)
      throw std::invalid_argument("topology: span lengths sum to " + std::to_string(sum) +
                                  " km but link length is " + std::to_string(l.length_km) + " km");
    l.amplifiers = default_amps;
    topo.links.push_back(std::move(l));
  }

  auto core = topo.core_nodes();
  if (core.size() < 2)
    throw std::invalid_argument("topology: fewer than two core nodes, no connections possible");

  // connectivity of the core set (through any nodes)
  std::vector<char> seen(topo.nodes.size(), 0);
  std::vector<std::size_t> stack = {core.front()};
  seen[core.front()] = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (auto [v, li] : topo.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  for (std::size_t c : core)
    if (!seen[c])
      throw std::invalid_argument("topology: core node \"" + topo.nodes[c].id +
                                  "\" unreachable, core set disconnected");
  return topo;
}

inline Topology load_topology(const std::string& path, const PenaltyConfig& penalties,
                              std::uint64_t seed,
                              const std::map<std::string, AmplifierSpec>& default_amps) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("topology: cannot open file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("topology: " + path + " is not valid JSON: " + e.what());
  }
  return parse_topology(doc, penalties, seed, default_amps);
}

struct CandidatePath {
  std::vector<std::size_t> node_idxs;
  std::vector<std::size_t> link_idxs;
  double total_length_km = 0.0;
  int roadm_hops = 0;  // traversed intermediate ROADMs

  friend bool operator==(const CandidatePath& x, const CandidatePath& y) {
    return x.node_idxs == y.node_idxs && x.link_idxs == y.link_idxs;
  }
};

namespace detail {

// Dijkstra over link lengths with nodes/links optionally masked out.
inline std::optional<CandidatePath> shortest_path(const Topology& topo, std::size_t s,
                                                  std::size_t d,
                                                  const std::vector<char>& node_banned,
                                                  const std::vector<char>& link_banned) {
  const std::size_t n = topo.nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev_node(n, n), prev_link(n, topo.links.size());
  std::set<std::pair<double, std::size_t>> queue;
  dist[s] = 0.0;
  queue.insert({0.0, s});
  while (!queue.empty()) {
    auto [du, u] = *queue.begin();
    queue.erase(queue.begin());
    if (u == d) break;
    for (auto [v, li] : topo.neighbors(u)) {
      if (node_banned[v] || link_banned[li]) continue;
      double nd = du + topo.links[li].length_km;
      if (nd < dist[v] - 1e-12) {
        queue.erase({dist[v], v});
        dist[v] = nd;
        prev_node[v] = u;
        prev_link[v] = li;
        queue.insert({nd, v});
      }
    }
  }
  if (!std::isfinite(dist[d])) return std::nullopt;
  CandidatePath p;
  p.total_length_km = dist[d];
  for (std::size_t v = d; v != s; v = prev_node[v]) {
    p.node_idxs.push_back(v);
    p.link_idxs.push_back(prev_link[v]);
  }
  p.node_idxs.push_back(s);
  std::reverse(p.node_idxs.begin(), p.node_idxs.end());
  std::reverse(p.link_idxs.begin(), p.link_idxs.end());
  p.roadm_hops = static_cast<int>(p.node_idxs.size()) - 2;
  return p;
}

}  // namespace detail

/// Yen's deviation-path algorithm: k loop-free paths by ascending length,
/// ties broken by the lexicographic node-index sequence. Fewer than k paths
/// come back when the graph admits fewer; an unreachable destination yields
/// an empty list.
inline std::vector<CandidatePath> k_shortest_paths(const Topology& topo, std::size_t s,
                                                   std::size_t d, std::size_t k) {
  if (s == d) throw std::invalid_argument("k_shortest_paths: source equals destination");
  std::vector<CandidatePath> result;
  std::vector<char> no_nodes(topo.nodes.size(), 0), no_links(topo.links.size(), 0);
  auto first = detail::shortest_path(topo, s, d, no_nodes, no_links);
  if (!first) return result;
  result.push_back(*first);

  using Key = std::pair<double, std::vector<std::size_t>>;
  std::map<Key, CandidatePath> candidates;
  while (result.size() < k) {
    const CandidatePath& last = result.back();
    for (std::size_t i = 0; i + 1 < last.node_idxs.size(); ++i) {
      std::size_t spur_node = last.node_idxs[i];
      std::vector<std::size_t> root_nodes(last.node_idxs.begin(), last.node_idxs.begin() + i + 1);
      std::vector<char> node_banned(topo.nodes.size(), 0), link_banned(topo.links.size(), 0);
      for (const auto& p : result) {
        if (p.node_idxs.size() > i &&
            std::equal(root_nodes.begin(), root_nodes.end(), p.node_idxs.begin()))
          if (p.link_idxs.size() > i) link_banned[p.link_idxs[i]] = 1;
      }
      for (std::size_t j = 0; j < i; ++j) node_banned[last.node_idxs[j]] = 1;
      auto spur = detail::shortest_path(topo, spur_node, d, node_banned, link_banned);
      if (!spur) continue;
      CandidatePath total;
      total.node_idxs = root_nodes;
      total.node_idxs.insert(total.node_idxs.end(), spur->node_idxs.begin() + 1,
                             spur->node_idxs.end());
      total.link_idxs.assign(last.link_idxs.begin(), last.link_idxs.begin() + i);
      total.link_idxs.insert(total.link_idxs.end(), spur->link_idxs.begin(),
                             spur->link_idxs.end());
      total.total_length_km = 0.0;
      for (std::size_t li : total.link_idxs) total.total_length_km += topo.links[li].length_km;
      total.roadm_hops = static_cast<int>(total.node_idxs.size()) - 2;
      candidates.insert({{total.total_length_km, total.node_idxs}, total});
    }
    // drop candidates already in the result set, then take the best
    while (!candidates.empty() &&
           std::find(result.begin(), result.end(), candidates.begin()->second) != result.end())
      candidates.erase(candidates.begin());
    if (candidates.empty()) break;
    result.push_back(candidates.begin()->second);
    candidates.erase(candidates.begin());
  }
  return result;
}

struct Demand {
  std::size_t id = 0;
  std::size_t src = 0;
  std::size_t dst = 0;
  double rate_bps = 0.0;  // 100..600 Gb/s in steps of 100
};

/// Demand endpoints are drawn over distinct core pairs with probability
/// proportional to (population * degree) of both ends; rates are uniform on
/// {100, ..., 600} Gb/s. The sequence is fully determined by the seed.
inline std::vector<Demand> generate_demand_sequence(const Topology& topo, std::uint64_t seed,
                                                    std::size_t count) {
  auto core = topo.core_nodes();
  if (core.size() < 2)
    throw std::invalid_argument("generate_demand_sequence: need at least two core nodes");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      double w = topo.nodes[core[i]].population * static_cast<double>(topo.degree(core[i])) *
                 topo.nodes[core[j]].population * static_cast<double>(topo.degree(core[j]));
      pairs.emplace_back(core[i], core[j]);
      total += w;
      cumulative.push_back(total);
    }
  if (total <= 0.0)
    throw std::invalid_argument("generate_demand_sequence: all pair weights are zero");

  Rng rng(seed);
  std::vector<Demand> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = rng.uniform01() * total;
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= pairs.size()) idx = pairs.size() - 1;
    Demand dm;
    dm.id = i;
    dm.src = pairs[idx].first;
    dm.dst = pairs[idx].second;
    dm.rate_bps = 100e9 * static_cast<double>(1 + rng.uniform_int(6));
    out.push_back(dm);
  }
  return out;
}

/// Random planar-ish test topology: nodes on a jittered ring, ring edges
/// plus random chords, spans cut at roughly 80 km.
inline Topology make_random_topology(std::uint64_t seed, std::size_t n_nodes, std::size_t n_core,
                                     std::size_t extra_links,
                                     const PenaltyConfig& penalties,
                                     const std::map<std::string, AmplifierSpec>& default_amps) {
  if (n_nodes < 3 || n_core < 2 || n_core > n_nodes)
    throw std::invalid_argument("make_random_topology: bad node counts");
  Rng rng(seed);
  nlohmann::json doc;
  doc["nodes"] = nlohmann::json::array();
  doc["links"] = nlohmann::json::array();
  std::vector<std::pair<double, double>> pos(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(n_nodes);
    double r = 400.0 + rng.uniform(-80.0, 80.0);
    pos[i] = {r * std::cos(ang), r * std::sin(ang)};
    doc["nodes"].push_back({{"id", "n" + std::to_string(i + 1)},
                            {"core", i < n_core},
                            {"population", 1.0 + rng.uniform(0.0, 4.0)}});
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto add_edge = [&](std::size_t i, std::size_t j) {
    auto key = std::minmax(i, j);
    if (edges.count(key)) return;
    edges.insert(key);
    double dx = pos[i].first - pos[j].first, dy = pos[i].second - pos[j].second;
    double len = std::max(80.0, std::hypot(dx, dy));
    auto nspans = static_cast<std::size_t>(std::ceil(len / 80.0));
    double span = len / static_cast<double>(nspans);
    nlohmann::json spans = nlohmann::json::array();
    for (std::size_t sidx = 0; sidx < nspans; ++sidx) spans.push_back(span);
    doc["links"].push_back({{"a", "n" + std::to_string(key.first + 1)},
                            {"b", "n" + std::to_string(key.second + 1)},
                            {"length_km", len},
                            {"spans_km", spans}});
  };
  for (std::size_t i = 0; i < n_nodes; ++i) add_edge(i, (i + 1) % n_nodes);
  for (std::size_t e = 0; e < extra_links; ++e) {
    std::size_t i = rng.uniform_int(n_nodes);
    std::size_t j = rng.uniform_int(n_nodes);
    if (i != j) add_edge(i, j);
  }
  return parse_topology(doc, penalties, seed, default_amps);
}

}  // namespace mbeon
