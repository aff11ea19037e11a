#include "aux_graph.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "errors.hpp"

namespace mlpce {

std::string_view edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::PHYSICAL: return "physical";
    case EdgeKind::LOGICAL: return "logical";
    case EdgeKind::ADAPTATION: return "adaptation";
    case EdgeKind::RING_SPECIAL: return "ring_special";
    case EdgeKind::DH_SPECIAL: return "dh_special";
    case EdgeKind::DH_HUB_LEG: return "dh_hub_leg";
  }
  return "?";
}

std::string tech_layer_node_id(const std::string& ne, TechLayer tl) {
  return ne + "#" + std::string(tech_name(tl.tech)) + "#" +
         std::string(layer_name(tl.layer));
}

std::string hub_node_id(const std::string& topology_id) {
  return "hub#" + topology_id;
}

NodeIdx AuxGraph::add_node(AuxNode n) {
  if (node_ids.count(n.id)) throw BuildError("duplicate node id " + n.id);
  n.idx = static_cast<NodeIdx>(nodes.size());
  node_ids.emplace(n.id, n.idx);
  adjacency.emplace_back();
  nodes.push_back(std::move(n));
  return nodes.back().idx;
}

EdgeIdx AuxGraph::add_edge(AuxEdge e) {
  if (edge_ids.count(e.id)) throw BuildError("duplicate edge id " + e.id);
  if (e.a >= nodes.size() || e.b >= nodes.size())
    throw BuildError("edge " + e.id + ": endpoint out of range");
  e.idx = static_cast<EdgeIdx>(edges.size());
  edge_ids.emplace(e.id, e.idx);
  for (NodeIdx n : {e.a, e.b}) {
    auto& adj = adjacency[n];
    auto pos = std::lower_bound(adj.begin(), adj.end(), e.idx,
                                [this, &e](EdgeIdx lhs, EdgeIdx) {
                                  return edges[lhs].id < e.id;
                                });
    adj.insert(pos, e.idx);
  }
  for (const auto& s : e.srlg_ids) srlg_edges[s].push_back(e.idx);
  edges.push_back(std::move(e));
  return edges.back().idx;
}

void AuxGraph::remove_last_edge() {
  if (edges.empty()) throw Error("remove_last_edge on empty graph");
  const AuxEdge& e = edges.back();
  for (NodeIdx n : {e.a, e.b}) {
    auto& adj = adjacency[n];
    adj.erase(std::remove(adj.begin(), adj.end(), e.idx), adj.end());
  }
  for (const auto& s : e.srlg_ids) {
    auto& v = srlg_edges[s];
    v.erase(std::remove(v.begin(), v.end(), e.idx), v.end());
    if (v.empty()) srlg_edges.erase(s);
  }
  edge_ids.erase(e.id);
  edges.pop_back();
}

NodeIdx AuxGraph::find_node(const std::string& id) const {
  auto it = node_ids.find(id);
  return it == node_ids.end() ? kNoNode : it->second;
}

EdgeIdx AuxGraph::find_edge(const std::string& id) const {
  auto it = edge_ids.find(id);
  return it == edge_ids.end() ? kNoEdge : it->second;
}

NodeIdx AuxGraph::tech_layer_node(const std::string& ne, TechLayer tl) const {
  return find_node(tech_layer_node_id(ne, tl));
}

GraphCounts AuxGraph::counts() const {
  GraphCounts c;
  for (const auto& n : nodes)
    (n.kind == NodeKind::HUB ? c.hub_nodes : c.tech_layer_nodes) += 1;
  for (const auto& e : edges) {
    switch (e.kind) {
      case EdgeKind::PHYSICAL: c.physical_edges += 1; break;
      case EdgeKind::LOGICAL: c.logical_edges += 1; break;
      case EdgeKind::ADAPTATION: c.adaptation_edges += 1; break;
      case EdgeKind::RING_SPECIAL:
      case EdgeKind::DH_SPECIAL:
      case EdgeKind::DH_HUB_LEG: c.special_edges += 1; break;
    }
  }
  c.total_edges = edges.size();
  return c;
}

void AuxGraph::check_consistency() const {
  // Adjacency must exactly mirror the edge set.
  std::size_t adj_entries = 0;
  for (NodeIdx n = 0; n < adjacency.size(); ++n) {
    for (EdgeIdx e : adjacency[n]) {
      if (e >= edges.size() || (edges[e].a != n && edges[e].b != n))
        throw Error("adjacency does not mirror edge set");
      ++adj_entries;
    }
  }
  if (adj_entries != 2 * edges.size())
    throw Error("adjacency entry count mismatch");

  for (const auto& e : edges) {
    const AuxNode& na = nodes[e.a];
    const AuxNode& nb = nodes[e.b];
    switch (e.kind) {
      case EdgeKind::ADAPTATION:
        if (na.ne_id != nb.ne_id || !(na.tl && nb.tl) || *na.tl == *nb.tl)
          throw Error("adaptation edge " + e.id + " endpoints invalid");
        if (e.client_node != e.a && e.client_node != e.b)
          throw Error("adaptation edge " + e.id + " missing client end");
        if (e.pool) throw Error("adaptation edge " + e.id + " carries a pool");
        break;
      case EdgeKind::PHYSICAL:
      case EdgeKind::LOGICAL:
        if (na.ne_id == nb.ne_id || !(na.tl && nb.tl) || !(*na.tl == *nb.tl))
          throw Error(std::string(edge_kind_name(e.kind)) + " edge " + e.id +
                      " endpoints invalid");
        break;
      case EdgeKind::RING_SPECIAL:
        if (!e.self_protected)
          throw Error("ring special edge " + e.id + " not self-protected");
        break;
      case EdgeKind::DH_SPECIAL:
      case EdgeKind::DH_HUB_LEG: {
        const bool hub_a = na.kind == NodeKind::HUB;
        const bool hub_b = nb.kind == NodeKind::HUB;
        if (hub_a == hub_b)
          throw Error("dual homing edge " + e.id + " needs exactly one hub end");
        break;
      }
    }
    if ((e.kind == EdgeKind::LOGICAL || e.kind == EdgeKind::RING_SPECIAL ||
         e.kind == EdgeKind::DH_SPECIAL) &&
        e.underlying.empty())
      throw Error("edge " + e.id + " missing underlying path");
    if (e.pool) e.pool->validate();
  }
  for (const auto& n : nodes)
    if (n.kind == NodeKind::HUB && n.topology_id.empty())
      throw Error("hub node " + n.id + " lacks its topology");
}

void AuxGraph::serialize(std::ostream& os) const {
  os << "auxgraph 1\n";
  for (const auto& n : nodes) {
    os << "n " << n.id << ' '
       << (n.kind == NodeKind::HUB ? "hub" : "tl");
    if (n.tl) os << ' ' << tl_name(*n.tl);
    os << '\n';
  }
  os << std::setprecision(12);
  for (const auto& e : edges) {
    os << "e " << e.id << ' ' << nodes[e.a].id << ' ' << nodes[e.b].id << ' '
       << edge_kind_name(e.kind) << " d=" << e.distance_km
       << " w=" << e.weight_initial << " act=" << (e.active ? 1 : 0)
       << " sp=" << (e.self_protected ? 1 : 0);
    if (e.pool) {
      os << " max=" << to_string(e.pool->max_mbps)
         << " avail=" << to_string(e.pool->available_mbps);
      for (const auto& [r, n] : e.pool->containers)
        os << ' ' << rate_name(r) << '=' << n;
    }
    if (!e.srlg_ids.empty()) {
      os << " srlg=";
      for (std::size_t i = 0; i < e.srlg_ids.size(); ++i)
        os << (i ? "," : "") << e.srlg_ids[i];
    }
    if (!e.underlying.empty()) {
      os << " under=";
      for (std::size_t i = 0; i < e.underlying.size(); ++i)
        os << (i ? "," : "") << edges[e.underlying[i]].id;
    }
    os << '\n';
  }
}

std::string AuxGraph::serialize_string() const {
  std::ostringstream os;
  serialize(os);
  return os.str();
}

std::uint64_t AuxGraph::state_hash() const {
  // FNV-1a over the canonical serialization.
  const std::string s = serialize_string();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mlpce
