#include "graph_build.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "errors.hpp"

namespace mlpce {

namespace {

// Walk the member links of a ring (cycle) or dual-homing chain into a
// deterministic node/edge order. Parallel edges are fine (2-node rings).
struct TopologyWalk {
  std::vector<std::string> nes;
  std::vector<EdgeIdx> edges;
};

TopologyWalk walk_members(const AuxGraph& g, const Topology& t,
                          const std::vector<EdgeIdx>& members) {
  std::map<std::string, std::vector<EdgeIdx>> incident;
  for (EdgeIdx e : members) {
    incident[g.nodes[g.edges[e].a].ne_id].push_back(e);
    incident[g.nodes[g.edges[e].b].ne_id].push_back(e);
  }
  for (auto& [ne, v] : incident)
    std::sort(v.begin(), v.end(), [&g](EdgeIdx x, EdgeIdx y) {
      return g.edges[x].id < g.edges[y].id;
    });

  std::string start;
  if (t.kind == TopologyKind::DUAL_HOMING) {
    start = t.aggregates[0];
  } else {
    start = incident.begin()->first;
  }

  TopologyWalk w;
  std::set<EdgeIdx> used;
  std::string cur = start;
  w.nes.push_back(cur);
  while (used.size() < members.size()) {
    EdgeIdx next_edge = kNoEdge;
    for (EdgeIdx e : incident[cur]) {
      if (!used.count(e)) {
        next_edge = e;
        break;
      }
    }
    if (next_edge == kNoEdge)
      throw BuildError("topology " + t.id + ": member links do not chain");
    used.insert(next_edge);
    const AuxEdge& e = g.edges[next_edge];
    const std::string& na = g.nodes[e.a].ne_id;
    cur = (na == cur) ? g.nodes[e.b].ne_id : na;
    w.edges.push_back(next_edge);
    w.nes.push_back(cur);
  }
  if (t.kind == TopologyKind::DUAL_HOMING) {
    if (w.nes.back() != t.aggregates[1])
      throw BuildError("topology " + t.id + ": chain does not end at aggregate");
  } else {
    if (w.nes.back() != start)
      throw BuildError("topology " + t.id + ": member links are not a cycle");
    w.nes.pop_back();  // rings: edges[i] joins nes[i] and nes[(i+1) % n]
  }
  return w;
}

CapacityPool bottleneck_pool(const AuxGraph& g,
                             const std::vector<EdgeIdx>& members) {
  CapacityPool p;
  bool first = true;
  for (EdgeIdx e : members) {
    const auto& pool = g.edges[e].pool;
    if (!pool) throw BuildError("topology member without capacity pool");
    if (first) {
      p = *pool;
      first = false;
      continue;
    }
    p.max_mbps = std::min(p.max_mbps, pool->max_mbps);
    for (auto it = p.containers.begin(); it != p.containers.end();) {
      auto jt = pool->containers.find(it->first);
      if (jt == pool->containers.end()) {
        it = p.containers.erase(it);
      } else {
        it->second = std::min(it->second, jt->second);
        ++it;
      }
    }
  }
  p.available_mbps = p.max_mbps;
  return p;
}

std::vector<std::string> union_srlgs(const AuxGraph& g,
                                     const std::vector<EdgeIdx>& members) {
  std::set<std::string> s;
  for (EdgeIdx e : members)
    s.insert(g.edges[e].srlg_ids.begin(), g.edges[e].srlg_ids.end());
  return {s.begin(), s.end()};
}

double total_distance(const AuxGraph& g, const std::vector<EdgeIdx>& members) {
  double d = 0.0;
  for (EdgeIdx e : members) d += g.edges[e].distance_km;
  return d;
}

}  // namespace

void add_topology_edges(AuxGraph& g, const std::string& topology_id) {
  auto it = g.topologies.find(topology_id);
  if (it == g.topologies.end())
    throw BuildError("unknown topology " + topology_id);
  TopologyInfo& info = it->second;
  const Topology& t = info.topo;
  if (t.kind == TopologyKind::MESH || t.kind == TopologyKind::LINEAR_1P1)
    return;  // members are already plain graph edges

  const auto members = info.member_edges;
  const CapacityPool pool = bottleneck_pool(g, members);
  const auto srlgs = union_srlgs(g, members);
  const double dist = total_distance(g, members);

  auto member_node = [&](const std::string& ne) {
    NodeIdx n = g.tech_layer_node(ne, info.tl);
    if (n == kNoNode)
      throw BuildError("topology " + t.id + ": " + ne + " lacks a " +
                       tl_name(info.tl) + " node");
    return n;
  };

  auto make_edge = [&](std::string id, NodeIdx a, NodeIdx b, EdgeKind kind,
                       bool self_prot, bool with_underlying) {
    AuxEdge e;
    e.id = std::move(id);
    e.a = a;
    e.b = b;
    e.kind = kind;
    e.distance_km = with_underlying ? dist : 0.0;
    e.pool = pool;
    e.self_protected = self_prot;
    e.topology_id = t.id;
    e.srlg_ids = srlgs;
    e.native_rate = g.edges[members[0]].native_rate;
    if (with_underlying) e.underlying = members;
    g.add_edge(std::move(e));
  };

  switch (t.kind) {
    case TopologyKind::CORE_RING: {
      std::vector<std::string> nes = info.member_nes;
      std::sort(nes.begin(), nes.end());
      for (std::size_t i = 0; i < nes.size(); ++i)
        for (std::size_t j = i + 1; j < nes.size(); ++j)
          make_edge("sp#" + t.id + "#" + nes[i] + "#" + nes[j],
                    member_node(nes[i]), member_node(nes[j]),
                    EdgeKind::RING_SPECIAL, true, true);
      break;
    }
    case TopologyKind::RING_WITH_AGG: {
      const std::string& agg = t.aggregates[0];
      std::vector<std::string> nes = info.member_nes;
      std::sort(nes.begin(), nes.end());
      for (const auto& ne : nes) {
        if (ne == agg) continue;
        make_edge("sp#" + t.id + "#" + ne + "#" + agg, member_node(ne),
                  member_node(agg), EdgeKind::RING_SPECIAL, true, true);
      }
      break;
    }
    case TopologyKind::DUAL_HOMING: {
      AuxNode hub;
      hub.id = hub_node_id(t.id);
      hub.kind = NodeKind::HUB;
      hub.topology_id = t.id;
      const NodeIdx hub_idx = g.add_node(std::move(hub));
      info.hub = hub_idx;
      std::vector<std::string> inner(info.member_nes.begin() + 1,
                                     info.member_nes.end() - 1);
      std::sort(inner.begin(), inner.end());
      for (const auto& ne : inner)
        make_edge("sp#" + t.id + "#" + ne + "#hub", member_node(ne), hub_idx,
                  EdgeKind::DH_SPECIAL, false, true);
      for (const auto& agg : t.aggregates)
        make_edge("hubleg#" + t.id + "#" + agg, hub_idx, member_node(agg),
                  EdgeKind::DH_HUB_LEG, false, false);
      break;
    }
    default:
      break;
  }
}

void trace_logical_links(AuxGraph& g,
                         const std::vector<LinkSpec>& inter_tech) {
  struct Port {
    const LinkSpec* link;
    std::string client_ne;
    TechLayer client_tl;
    std::string server_ne;
    TechLayer server_tl;
  };
  std::vector<Port> ports;
  for (const auto& l : inter_tech) {
    Port p;
    p.link = &l;
    const bool a_is_client = l.client_end.value_or('a') == 'a';
    p.client_ne = a_is_client ? l.ne_a : l.ne_b;
    p.client_tl = a_is_client ? l.tl_a : l.tl_b;
    p.server_ne = a_is_client ? l.ne_b : l.ne_a;
    p.server_tl = a_is_client ? l.tl_b : l.tl_a;
    ports.push_back(std::move(p));
  }
  std::sort(ports.begin(), ports.end(),
            [](const Port& x, const Port& y) { return x.link->id < y.link->id; });

  auto server_edges_at = [&](const Port& p, const std::string& ne) {
    std::vector<EdgeIdx> out;
    NodeIdx n = g.tech_layer_node(ne, p.server_tl);
    if (n == kNoNode) return out;
    for (EdgeIdx e : g.adjacency[n])
      if (g.edges[e].kind == EdgeKind::PHYSICAL) out.push_back(e);
    return out;
  };

  std::set<std::pair<std::string, std::string>> paired;
  std::map<std::string, int> dup_count;

  for (const auto& p : ports) {
    // Trace the server-layer chain until it hits another inter-tech link's
    // server port with a matching client layer; branches and loose ends stop
    // the trace, a revisited element means the network description is broken.
    std::vector<EdgeIdx> path;
    std::set<std::string> visited{p.server_ne};
    std::string cur = p.server_ne;
    EdgeIdx came_from = kNoEdge;
    const Port* matched = nullptr;
    while (true) {
      if (cur != p.server_ne) {
        for (const auto& q : ports) {
          if (q.link->id == p.link->id) continue;
          if (q.server_ne == cur && q.server_tl == p.server_tl &&
              q.client_tl == p.client_tl) {
            matched = &q;
            break;
          }
        }
        if (matched) break;
      }
      auto cands = server_edges_at(p, cur);
      cands.erase(std::remove(cands.begin(), cands.end(), came_from),
                  cands.end());
      if (cands.size() != 1) break;  // loose end or ambiguous branch
      const AuxEdge& e = g.edges[cands[0]];
      const std::string& na = g.nodes[e.a].ne_id;
      cur = (na == cur) ? g.nodes[e.b].ne_id : na;
      if (!visited.insert(cur).second)
        throw BuildError("cyclic trace from inter-tech link " + p.link->id);
      came_from = cands[0];
      path.push_back(cands[0]);
    }
    if (!matched || path.empty()) continue;
    auto key = std::minmax(p.link->id, matched->link->id);
    if (!paired.insert({key.first, key.second}).second) continue;

    NodeIdx ca = g.tech_layer_node(p.client_ne, p.client_tl);
    NodeIdx cb = g.tech_layer_node(matched->client_ne, matched->client_tl);
    if (ca == kNoNode || cb == kNoNode)
      throw BuildError("inter-tech link " + p.link->id +
                       ": client port node missing");
    AuxEdge e;
    std::string base = "log#" + std::min(g.nodes[ca].id, g.nodes[cb].id) +
                       "#" + std::max(g.nodes[ca].id, g.nodes[cb].id);
    int& n = dup_count[base];
    e.id = n == 0 ? base : base + "#" + std::to_string(n + 1);
    n += 1;
    e.a = ca;
    e.b = cb;
    e.kind = EdgeKind::LOGICAL;
    e.distance_km = total_distance(g, path);
    e.pool = CapacityPool::for_link(*p.link->client_rate);
    e.native_rate = *p.link->client_rate;
    std::set<std::string> srlgs(p.link->srlg_ids.begin(),
                                p.link->srlg_ids.end());
    srlgs.insert(matched->link->srlg_ids.begin(),
                 matched->link->srlg_ids.end());
    for (EdgeIdx u : path)
      srlgs.insert(g.edges[u].srlg_ids.begin(), g.edges[u].srlg_ids.end());
    e.srlg_ids.assign(srlgs.begin(), srlgs.end());
    e.underlying = path;
    g.add_edge(std::move(e));
  }
}

AuxGraph build_auxiliary_graph(const Network& input, const WeightParams& wp) {
  Network net = input;
  net.canonicalize();
  net.validate();

  AuxGraph g;

  // Step 1: one node per supported technology/layer combination.
  for (const auto& ne : net.elements) {
    for (TechLayer tl : ne.supported) {
      AuxNode n;
      n.id = tech_layer_node_id(ne.id, tl);
      n.kind = NodeKind::TECH_LAYER;
      n.ne_id = ne.id;
      n.tl = tl;
      g.add_node(std::move(n));
    }
  }

  // Step 2: adaptation edges inside each element.
  for (const auto& ne : net.elements) {
    for (const auto& [client, server] : ne.adaptations) {
      AuxEdge e;
      e.id = "ad#" + ne.id + "#" + tl_name(client) + "#" + tl_name(server);
      e.a = g.tech_layer_node(ne.id, client);
      e.b = g.tech_layer_node(ne.id, server);
      e.kind = EdgeKind::ADAPTATION;
      e.client_node = e.a;
      g.add_edge(std::move(e));
    }
  }

  // Step 3: physical links. Links bridging two technologies stay out of the
  // graph (a plain edge would bypass the adaptation stack) and feed step 4.
  std::vector<LinkSpec> inter_tech;
  for (const auto& l : net.links) {
    if (l.inter_tech()) {
      inter_tech.push_back(l);
      continue;
    }
    NodeIdx a = g.tech_layer_node(l.ne_a, l.tl_a);
    NodeIdx b = g.tech_layer_node(l.ne_b, l.tl_b);
    if (a == kNoNode || b == kNoNode)
      throw BuildError("link " + l.id + ": endpoint node missing");
    AuxEdge e;
    e.id = l.id;
    e.a = a;
    e.b = b;
    e.kind = EdgeKind::PHYSICAL;
    e.distance_km = l.distance_km;
    e.pool = CapacityPool::for_link(l.rate, l.channels);
    e.self_protected = l.self_protected;
    e.srlg_ids = l.srlg_ids;
    e.native_rate = l.rate;
    g.add_edge(std::move(e));
  }

  // Step 4: logical links discovered by tracing inter-technology links.
  trace_logical_links(g, inter_tech);

  // Step 5: register topologies, then add their special edges.
  for (const auto& t : net.topologies) {
    TopologyInfo info;
    info.topo = t;
    for (const auto& lid : t.member_links) {
      EdgeIdx e = g.find_edge(lid);
      if (e == kNoEdge)
        throw BuildError("topology " + t.id + ": member link " + lid +
                         " not in graph");
      info.member_edges.push_back(e);
    }
    info.tl = *g.nodes[g.edges[info.member_edges[0]].a].tl;
    if (t.kind == TopologyKind::LINEAR_1P1)
      for (EdgeIdx e : info.member_edges) g.edges[e].self_protected = true;
    for (EdgeIdx e : info.member_edges) g.edges[e].topology_id = t.id;
    if (t.kind == TopologyKind::CORE_RING ||
        t.kind == TopologyKind::RING_WITH_AGG ||
        t.kind == TopologyKind::DUAL_HOMING) {
      auto walk = walk_members(g, t, info.member_edges);
      info.member_edges = walk.edges;
      info.member_nes = walk.nes;
    }
    g.topologies.emplace(t.id, std::move(info));
  }
  for (const auto& t : net.topologies) add_topology_edges(g, t.id);

  assign_initial_weights(g, wp);
  g.check_consistency();
  return g;
}

}  // namespace mlpce
