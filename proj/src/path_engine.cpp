#include "path_engine.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "errors.hpp"

namespace mlpce {

std::vector<NodeIdx> PathResult::nodes_along(const AuxGraph& g) const {
  std::vector<NodeIdx> out{src};
  NodeIdx cur = src;
  for (EdgeIdx e : edges) {
    cur = g.edges[e].other(cur);
    out.push_back(cur);
  }
  return out;
}

bool edge_seq_less(const AuxGraph& g, const std::vector<EdgeIdx>& a,
                   const std::vector<EdgeIdx>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&g](EdgeIdx x, EdgeIdx y) { return g.edges[x].id < g.edges[y].id; });
}

bool path_order_less(const AuxGraph& g, const PathResult& a,
                     const PathResult& b) {
  if (cost_less(a.cost, b.cost)) return true;
  if (cost_less(b.cost, a.cost)) return false;
  if (a.hops() != b.hops()) return a.hops() < b.hops();
  return edge_seq_less(g, a.edges, b.edges);
}

std::optional<AdaptStack> explore_edge(const AuxGraph& g, EdgeIdx ei,
                                       NodeIdx from, const AdaptStack& stack,
                                       int max_stack_depth) {
  const AuxEdge& e = g.edges[ei];
  if (e.kind != EdgeKind::ADAPTATION) return stack;
  const NodeIdx to = e.other(from);
  const TechLayer cur_tl = *g.nodes[from].tl;
  const TechLayer adj_tl = *g.nodes[to].tl;
  AdaptStack next = stack;
  if (stack.empty()) {
    next.push_back(cur_tl);
  } else if (e.client_node == to) {
    // server-to-client adaptation: only valid when we return to the layer
    // recorded on top of the stack
    if (stack.back() == adj_tl) {
      next.pop_back();
    } else {
      return std::nullopt;
    }
  } else {
    // client-to-server adaptation
    next.push_back(cur_tl);
  }
  if (static_cast<int>(next.size()) > max_stack_depth) return std::nullopt;
  return next;
}

bool hub_transition_ok(const AuxGraph& g, NodeIdx at, EdgeIdx prev,
                       EdgeIdx next) {
  if (g.nodes[at].kind != NodeKind::HUB) return true;
  if (prev == kNoEdge) return true;
  const EdgeKind a = g.edges[prev].kind;
  const EdgeKind b = g.edges[next].kind;
  return (a == EdgeKind::DH_SPECIAL && b == EdgeKind::DH_HUB_LEG) ||
         (a == EdgeKind::DH_HUB_LEG && b == EdgeKind::DH_SPECIAL);
}

std::optional<AdaptStack> replay_path(const AuxGraph& g, NodeIdx src,
                                      const std::vector<EdgeIdx>& edges,
                                      const AdaptStack& initial,
                                      int max_stack_depth) {
  AdaptStack stack = initial;
  NodeIdx cur = src;
  EdgeIdx prev = kNoEdge;
  std::set<NodeIdx> seen{src};
  for (EdgeIdx ei : edges) {
    const AuxEdge& e = g.edges[ei];
    if (e.a != cur && e.b != cur) return std::nullopt;
    if (!hub_transition_ok(g, cur, prev, ei)) return std::nullopt;
    auto next = explore_edge(g, ei, cur, stack, max_stack_depth);
    if (!next) return std::nullopt;
    stack = std::move(*next);
    cur = e.other(cur);
    if (!seen.insert(cur).second) return std::nullopt;
    prev = ei;
  }
  return stack;
}

namespace {

struct Label {
  double cost = 0.0;
  std::uint32_t hops = 0;
  EdgeIdx via = kNoEdge;
  std::uint32_t parent = UINT32_MAX;  // slot index
  AdaptStack stack;
  std::uint32_t version = 0;
  bool reached = false;
  bool settled = false;
};

std::vector<EdgeIdx> chain_edges(const std::vector<Label>& labels,
                                 std::uint32_t slot) {
  std::vector<EdgeIdx> out;
  while (slot != UINT32_MAX && labels[slot].via != kNoEdge) {
    out.push_back(labels[slot].via);
    slot = labels[slot].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

struct QueueEntry {
  double cost;
  std::uint32_t hops;
  std::uint32_t slot;
  std::uint32_t version;
  bool operator>(const QueueEntry& o) const {
    if (cost != o.cost) return cost > o.cost;
    if (hops != o.hops) return hops > o.hops;
    return slot > o.slot;
  }
};

// One (cost, stack) label per node, except hub nodes which keep one label
// per entry class: a hub reached over an aggregate leg may only continue
// over a member spoke and vice versa, so the two entries do not dominate
// each other and a single label would mask valid routes.
struct SlotTable {
  const AuxGraph& g;
  std::vector<std::uint32_t> leg_slot;  // per node; hubs get a second slot
  std::uint32_t n_slots;

  explicit SlotTable(const AuxGraph& graph) : g(graph) {
    leg_slot.assign(g.nodes.size(), UINT32_MAX);
    std::uint32_t next = static_cast<std::uint32_t>(g.nodes.size());
    for (const auto& n : g.nodes)
      if (n.kind == NodeKind::HUB) leg_slot[n.idx] = next++;
    n_slots = next;
  }
  std::uint32_t of(NodeIdx node, EdgeIdx arriving) const {
    if (g.nodes[node].kind == NodeKind::HUB && arriving != kNoEdge &&
        g.edges[arriving].kind == EdgeKind::DH_HUB_LEG)
      return leg_slot[node];
    return node;
  }
  std::vector<NodeIdx> slot_nodes() const {
    std::vector<NodeIdx> out(n_slots);
    for (NodeIdx n = 0; n < g.nodes.size(); ++n) {
      out[n] = n;
      if (leg_slot[n] != UINT32_MAX) out[leg_slot[n]] = n;
    }
    return out;
  }
};

}  // namespace

std::optional<PathResult> dijkstra_shortest_path(AuxGraph& g, NodeIdx src,
                                                 NodeIdx dst,
                                                 const WeightFn& wf,
                                                 const SearchOptions& opts) {
  if (src == dst) throw ValidationError("path query with src == dst");
  if (src >= g.nodes.size() || dst >= g.nodes.size())
    throw ValidationError("path query with unknown node");

  const SlotTable slots(g);
  std::vector<Label> labels(slots.n_slots);
  const std::vector<NodeIdx> slot_node = slots.slot_nodes();

  const std::uint32_t start = slots.of(src, opts.entry_edge);
  labels[start].reached = true;
  labels[start].stack = opts.initial_stack;
  labels[start].via = kNoEdge;

  std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                      std::greater<QueueEntry>>
      pq;
  pq.push({0.0, 0, start, 0});

  std::uint32_t dst_slot = UINT32_MAX;
  while (!pq.empty()) {
    const QueueEntry top = pq.top();
    pq.pop();
    Label& lu = labels[top.slot];
    if (lu.settled || top.version != lu.version) continue;
    lu.settled = true;
    const NodeIdx u = slot_node[top.slot];
    if (u == dst) {
      dst_slot = top.slot;
      break;
    }
    for (EdgeIdx ei : g.adjacency[u]) {
      const AuxEdge& e = g.edges[ei];
      if (!e.active) continue;
      const NodeIdx v = e.other(u);
      const EdgeIdx arrived_by =
          (top.slot == start) ? opts.entry_edge : lu.via;
      if (!hub_transition_ok(g, u, arrived_by, ei)) continue;
      auto next_stack = explore_edge(g, ei, u, lu.stack, opts.max_stack_depth);
      if (!next_stack) continue;
      if (v == dst && !next_stack->empty()) continue;
      const std::uint32_t vslot = slots.of(v, ei);
      Label& lv = labels[vslot];
      if (lv.settled) continue;
      const double w = wf(g, ei);
      if (w < 0.0) throw ValidationError("negative edge weight");
      const double cand_cost = lu.cost + w;
      const std::uint32_t cand_hops = lu.hops + 1;
      bool better = false;
      if (!lv.reached) {
        better = true;
      } else if (cost_less(cand_cost, lv.cost)) {
        better = true;
      } else if (cost_eq(cand_cost, lv.cost)) {
        if (cand_hops < lv.hops) {
          better = true;
        } else if (cand_hops == lv.hops) {
          auto cand_seq = chain_edges(labels, top.slot);
          cand_seq.push_back(ei);
          better = edge_seq_less(g, cand_seq, chain_edges(labels, vslot));
        }
      }
      if (!better) continue;
      lv.reached = true;
      lv.cost = cand_cost;
      lv.hops = cand_hops;
      lv.via = ei;
      lv.parent = top.slot;
      lv.stack = std::move(*next_stack);
      lv.version += 1;
      pq.push({cand_cost, cand_hops, vslot, lv.version});
    }
  }
  if (dst_slot == UINT32_MAX) return std::nullopt;

  PathResult r;
  r.src = src;
  r.dst = dst;
  r.cost = labels[dst_slot].cost;
  r.edges = chain_edges(labels, dst_slot);
  return r;
}

namespace {

struct CandLess {
  const AuxGraph* g;
  bool operator()(const PathResult& a, const PathResult& b) const {
    return path_order_less(*g, a, b);
  }
};

}  // namespace

std::vector<PathResult> yen_k_shortest(AuxGraph& g, NodeIdx src, NodeIdx dst,
                                       std::size_t k, const WeightFn& wf,
                                       const SearchOptions& opts) {
  if (k == 0) throw ValidationError("k must be >= 1");
  std::vector<PathResult> accepted;
  auto first = dijkstra_shortest_path(g, src, dst, wf, opts);
  if (!first) return accepted;
  accepted.push_back(std::move(*first));

  std::set<PathResult, CandLess> candidates{CandLess{&g}};
  std::set<std::vector<EdgeIdx>> known{accepted[0].edges};

  while (accepted.size() < k) {
    const PathResult prev = accepted.back();
    const auto prev_nodes = prev.nodes_along(g);
    for (std::size_t i = 0; i < prev.edges.size(); ++i) {
      const NodeIdx spur = prev_nodes[i];
      const std::vector<EdgeIdx> root(prev.edges.begin(),
                                      prev.edges.begin() + i);
      ScopedRemoval rem(g);
      for (const auto& p : accepted) {
        if (p.edges.size() > i &&
            std::equal(root.begin(), root.end(), p.edges.begin()))
          rem.remove(p.edges[i]);
      }
      for (std::size_t j = 0; j < i; ++j) rem.remove_incident(prev_nodes[j]);

      auto spur_stack = replay_path(g, src, root, opts.initial_stack,
                                    opts.max_stack_depth);
      if (!spur_stack) continue;
      double root_cost = 0.0;
      for (EdgeIdx e : root) root_cost += wf(g, e);

      SearchOptions spur_opts;
      spur_opts.initial_stack = std::move(*spur_stack);
      spur_opts.entry_edge = root.empty() ? opts.entry_edge : root.back();
      spur_opts.max_stack_depth = opts.max_stack_depth;
      auto spur_path = dijkstra_shortest_path(g, spur, dst, wf, spur_opts);
      if (!spur_path) continue;

      PathResult total;
      total.src = src;
      total.dst = dst;
      total.edges = root;
      total.edges.insert(total.edges.end(), spur_path->edges.begin(),
                         spur_path->edges.end());
      total.cost = root_cost + spur_path->cost;
      if (known.insert(total.edges).second)
        candidates.insert(std::move(total));
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return accepted;
}

std::vector<PathResult> find_unprotected_path(AuxGraph& g, NodeIdx src,
                                              NodeIdx dst, std::size_t n,
                                              const WeightFn& wf,
                                              const SearchOptions& opts) {
  ScopedRemoval rem(g);
  for (const auto& e : g.edges)
    if (e.self_protected && e.active) rem.remove(e.idx);
  if (n == 1) {
    auto p = dijkstra_shortest_path(g, src, dst, wf, opts);
    if (!p) return {};
    return {std::move(*p)};
  }
  return yen_k_shortest(g, src, dst, n, wf, opts);
}

std::vector<Segment> split_segments(const AuxGraph& g, const PathResult& path) {
  std::vector<Segment> segs;
  const auto nodes = path.nodes_along(g);

  // An adaptation run between two capacity edges is always pops followed by
  // pushes (push-then-pop would revisit a node). Pops close the crossing
  // behind them and join the preceding segment; pushes open the next one.
  // That keeps every segment stack-balanced, so a protection search between
  // its boundary nodes can succeed.
  std::vector<bool> is_pop(path.edges.size(), false);
  {
    AdaptStack st;
    for (std::size_t pos = 0; pos < path.edges.size(); ++pos) {
      if (g.edges[path.edges[pos]].kind != EdgeKind::ADAPTATION) continue;
      auto next = explore_edge(g, path.edges[pos], nodes[pos], st,
                               std::numeric_limits<int>::max());
      if (!next) break;  // foreign path; remaining edges stay "push"
      is_pop[pos] = next->size() < st.size();
      st = std::move(*next);
    }
  }

  std::vector<EdgeIdx> pending;  // push run awaiting its capacity edge
  NodeIdx pending_start = kNoNode;
  std::size_t pending_first = 0;
  bool have_cur = false;
  Segment cur;

  for (std::size_t pos = 0; pos < path.edges.size(); ++pos) {
    const AuxEdge& e = g.edges[path.edges[pos]];
    const NodeIdx before = nodes[pos];
    if (e.kind == EdgeKind::ADAPTATION) {
      if (is_pop[pos] && have_cur && pending.empty()) {
        cur.edges.push_back(path.edges[pos]);
        cur.last_pos = pos;
      } else {
        if (pending.empty()) {
          pending_start = before;
          pending_first = pos;
        }
        pending.push_back(path.edges[pos]);
      }
      continue;
    }
    const bool klass = e.internally_protected();
    const NodeIdx boundary = pending.empty() ? before : pending_start;
    if (!have_cur || cur.internally_protected != klass) {
      if (have_cur) {
        cur.dst = boundary;
        segs.push_back(cur);
      }
      cur = Segment{};
      cur.src = boundary;
      cur.first_pos = pending.empty() ? pos : pending_first;
      cur.internally_protected = klass;
      have_cur = true;
    }
    cur.edges.insert(cur.edges.end(), pending.begin(), pending.end());
    pending.clear();
    cur.edges.push_back(path.edges[pos]);
    cur.last_pos = pos;
  }
  if (have_cur) {
    cur.edges.insert(cur.edges.end(), pending.begin(), pending.end());
    if (!pending.empty()) cur.last_pos = path.edges.size() - 1;
    cur.dst = path.dst;
    segs.push_back(cur);
  }
  return segs;
}

std::vector<ProtectedPath> find_lpp(AuxGraph& g, NodeIdx src, NodeIdx dst,
                                    std::size_t n, const WeightFn& wf,
                                    const SearchOptions& opts) {
  if (src == dst) throw ValidationError("path query with src == dst");

  // Topologies represented by special edges contribute only those edges to
  // protected path computation; their member links leave the view.
  ScopedRemoval topo_rem(g);
  for (const auto& [id, info] : g.topologies) {
    const auto kind = info.topo.kind;
    if (kind == TopologyKind::CORE_RING ||
        kind == TopologyKind::RING_WITH_AGG ||
        kind == TopologyKind::DUAL_HOMING)
      for (EdgeIdx e : info.member_edges) topo_rem.remove(e);
  }

  const auto candidates = yen_k_shortest(g, src, dst, n, wf, opts);
  std::vector<ProtectedPath> out;
  for (const auto& working : candidates) {
    ScopedRemoval rem(g);
    std::set<std::string> srlgs;
    for (EdgeIdx ei : working.edges) {
      const AuxEdge& e = g.edges[ei];
      if (e.kind == EdgeKind::ADAPTATION) continue;
      rem.remove(ei);
      srlgs.insert(e.srlg_ids.begin(), e.srlg_ids.end());
    }
    for (const auto& s : srlgs) {
      auto it = g.srlg_edges.find(s);
      if (it == g.srlg_edges.end()) continue;
      for (EdgeIdx e : it->second) rem.remove(e);
    }

    bool ok = true;
    ProtectedPath pp;
    pp.working = working;
    for (const auto& seg : split_segments(g, working)) {
      if (seg.internally_protected) continue;
      SearchOptions seg_opts;
      seg_opts.max_stack_depth = opts.max_stack_depth;
      auto prot = find_unprotected_path(g, seg.src, seg.dst, 1, wf, seg_opts);
      if (prot.empty()) {
        ok = false;
        break;
      }
      pp.protection.push_back(
          {seg.src, seg.dst, seg.first_pos, seg.last_pos, std::move(prot[0])});
    }
    if (!ok) continue;
    pp.combined_cost = working.cost;
    for (const auto& ps : pp.protection) pp.combined_cost += ps.path.cost;
    out.push_back(std::move(pp));
  }
  std::stable_sort(out.begin(), out.end(),
                   [&g](const ProtectedPath& a, const ProtectedPath& b) {
                     if (cost_less(a.combined_cost, b.combined_cost))
                       return true;
                     if (cost_less(b.combined_cost, a.combined_cost))
                       return false;
                     return path_order_less(g, a.working, b.working);
                   });
  return out;
}

namespace {

double arc_weight(const AuxGraph& g, const std::vector<EdgeIdx>& arc) {
  double w = 0.0;
  for (EdgeIdx e : arc) w += g.edges[e].weight_initial;
  return w;
}

std::size_t ne_position(const TopologyInfo& info, const std::string& ne) {
  for (std::size_t i = 0; i < info.member_nes.size(); ++i)
    if (info.member_nes[i] == ne) return i;
  throw Error("element " + ne + " not on topology " + info.topo.id);
}

}  // namespace

ExpandedArcs expand_special_edge(const AuxGraph& g, EdgeIdx special,
                                 const std::string& exit_aggregate) {
  const AuxEdge& e = g.edges[special];
  auto it = g.topologies.find(e.topology_id);
  if (it == g.topologies.end())
    throw Error("special edge " + e.id + " without topology");
  const TopologyInfo& info = it->second;

  if (e.kind == EdgeKind::RING_SPECIAL) {
    const std::size_t n = info.member_edges.size();
    if (n < 2) throw Error("degenerate ring " + info.topo.id);
    const std::size_t pu = ne_position(info, g.nodes[e.a].ne_id);
    const std::size_t pv = ne_position(info, g.nodes[e.b].ne_id);
    std::vector<EdgeIdx> fwd, bwd;
    for (std::size_t i = pu; i != pv; i = (i + 1) % n)
      fwd.push_back(info.member_edges[i]);
    for (std::size_t i = pu; i != pv;) {
      i = (i + n - 1) % n;
      bwd.push_back(info.member_edges[i]);
    }
    const double wf = arc_weight(g, fwd), wb = arc_weight(g, bwd);
    bool fwd_working;
    if (cost_less(wf, wb)) fwd_working = true;
    else if (cost_less(wb, wf)) fwd_working = false;
    else fwd_working = edge_seq_less(g, fwd, bwd);
    return fwd_working ? ExpandedArcs{fwd, bwd} : ExpandedArcs{bwd, fwd};
  }

  if (e.kind == EdgeKind::DH_SPECIAL) {
    const NodeIdx member_node =
        g.nodes[e.a].kind == NodeKind::HUB ? e.b : e.a;
    const std::string& m = g.nodes[member_node].ne_id;
    const std::size_t pm = ne_position(info, m);
    std::vector<EdgeIdx> to_first, to_second;
    for (std::size_t i = pm; i-- > 0;)
      to_first.push_back(info.member_edges[i]);
    for (std::size_t i = pm; i < info.member_edges.size(); ++i)
      to_second.push_back(info.member_edges[i]);
    const std::string& agg1 = info.topo.aggregates[0];
    const std::string& agg2 = info.topo.aggregates[1];
    if (!exit_aggregate.empty()) {
      if (exit_aggregate == agg1) return {to_first, to_second};
      if (exit_aggregate == agg2) return {to_second, to_first};
      throw Error("exit aggregate " + exit_aggregate + " not on " +
                  info.topo.id);
    }
    const double w1 = arc_weight(g, to_first), w2 = arc_weight(g, to_second);
    if (cost_less(w2, w1)) return {to_second, to_first};
    if (cost_eq(w1, w2) && edge_seq_less(g, to_second, to_first))
      return {to_second, to_first};
    return {to_first, to_second};
  }

  throw Error("edge " + e.id + " is not expandable");
}

}  // namespace mlpce
