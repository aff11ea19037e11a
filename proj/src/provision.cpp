#include "provision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "errors.hpp"

namespace mlpce {

std::string_view path_type_name(PathType t) {
  return t == PathType::UNPROTECTED ? "unprotected" : "lpp";
}

PathType parse_path_type(std::string_view s) {
  if (s == "unprotected") return PathType::UNPROTECTED;
  if (s == "lpp") return PathType::LPP;
  throw ValidationError("unknown path type: " + std::string(s));
}

struct Provisioner::Journal {
  struct Consumed {
    EdgeIdx edge;
    LayerRate rate;
    Mbps cap;
  };
  std::vector<Consumed> consumed;
  std::size_t created_edges = 0;
  std::uint64_t seq_before = 0;
  std::vector<LedgerEntry> pending;
  Mbps total{0};
};

Provisioner::Provisioner(AuxGraph& g, const WeightParams& wp)
    : g_(g), wp_(wp) {
  derive_normalizers(g_, wp_);
  wp_.validate();
}

void Provisioner::consume_on(EdgeIdx ei, LayerRate rate, const Mbps& cap,
                             bool bearer, Journal& j) {
  AuxEdge& e = g_.edges[ei];
  if (!e.pool)
    throw Error("edge " + e.id + " carries no capacity pool");
  try {
    e.pool->consume(rate, cap);  // CapacityError propagates for rollback
  } catch (const CapacityError& ex) {
    throw CapacityError(std::string(ex.what()) + " on edge " + e.id);
  }
  j.consumed.push_back({ei, rate, cap});
  const Mbps amount = demanded_mbps(rate, cap);
  j.pending.push_back({e.id, rate, amount, bearer, active_request_});
  j.total += amount;
}

void Provisioner::charge_edge_deep(EdgeIdx ei, LayerRate rate, const Mbps& cap,
                                   bool both_arcs, bool bearer,
                                   const std::string& exit_agg, Journal& j) {
  consume_on(ei, rate, cap, bearer, j);
  const EdgeKind kind = g_.edges[ei].kind;
  if (kind != EdgeKind::RING_SPECIAL && kind != EdgeKind::DH_SPECIAL) return;
  // Special edges mirror their charge onto the member links they stand for;
  // dedicated traffic occupies both expanded arcs.
  const ExpandedArcs arcs = expand_special_edge(g_, ei, exit_agg);
  for (EdgeIdx m : arcs.working) consume_on(m, rate, cap, bearer, j);
  if (both_arcs)
    for (EdgeIdx m : arcs.protection) consume_on(m, rate, cap, bearer, j);
}

namespace {

// The aggregate a dual-homing hub route exits through, read off the hub leg
// adjacent to the spoke edge at `pos`.
std::string paired_aggregate(const AuxGraph& g, const PathResult& path,
                             const std::vector<NodeIdx>& nodes,
                             std::size_t pos) {
  const AuxEdge& spoke = g.edges[path.edges[pos]];
  const NodeIdx hub =
      g.nodes[spoke.a].kind == NodeKind::HUB ? spoke.a : spoke.b;
  EdgeIdx leg = kNoEdge;
  if (pos + 1 < path.edges.size() && nodes[pos + 1] == hub)
    leg = path.edges[pos + 1];
  else if (pos > 0 && nodes[pos] == hub)
    leg = path.edges[pos - 1];
  if (leg == kNoEdge || g.edges[leg].kind != EdgeKind::DH_HUB_LEG)
    throw Error("hub spoke " + spoke.id + " not paired with an aggregate leg");
  const AuxEdge& l = g.edges[leg];
  const NodeIdx agg_node = g.nodes[l.a].kind == NodeKind::HUB ? l.b : l.a;
  return g.nodes[agg_node].ne_id;
}

}  // namespace

void Provisioner::charge_span(const PathResult& path,
                              const std::vector<NodeIdx>& nodes,
                              const std::vector<EdgeIdx>& cover,
                              std::size_t from, std::size_t to, LayerRate rate,
                              const Mbps& cap, bool both_arcs, bool bearer,
                              Journal& j) {
  std::size_t p = from;
  while (p < to) {
    if (cover[p] != kNoEdge) {
      const EdgeIdx c = cover[p];
      consume_on(c, rate, cap, bearer, j);
      while (p < to && cover[p] == c) ++p;
      continue;
    }
    const AuxEdge& e = g_.edges[path.edges[p]];
    if (e.kind == EdgeKind::ADAPTATION) {
      ++p;
      continue;
    }
    std::string exit_agg;
    if (e.kind == EdgeKind::DH_SPECIAL)
      exit_agg = paired_aggregate(g_, path, nodes, p);
    charge_edge_deep(path.edges[p], rate, cap, both_arcs, bearer, exit_agg, j);
    ++p;
  }
}

LayerRate Provisioner::container_rate_for(const PathResult& path,
                                          std::size_t push_pos,
                                          std::size_t pop_pos,
                                          TechLayer popped) const {
  if (popped == kSdhVc4) return LayerRate::VC4;
  if (popped == kOtnOdu) return LayerRate::ODU2;
  if (popped == kOtnOtu) return LayerRate::OTU2;
  if (popped == kWdmOch) return LayerRate::OCH;

  auto eth_rate = [](std::optional<LayerRate> r) {
    return r && (*r == LayerRate::GE || *r == LayerRate::TENGE);
  };
  if (popped == kMplsTunnel) {
    // tunnels size to the slimmest client-capable link they ride over
    std::optional<LayerRate> best;
    for (std::size_t q = push_pos + 1; q < pop_pos; ++q) {
      const AuxEdge& e = g_.edges[path.edges[q]];
      if (!e.carries_capacity() || !eth_rate(e.native_rate)) continue;
      if (!best || rate_mbps(*e.native_rate) < rate_mbps(*best))
        best = e.native_rate;
    }
    return best.value_or(LayerRate::GE);
  }
  if (popped == kEthLink) {
    // client port rate: the slimmest client-layer link the flow traverses
    // outside the adapted span (its end-to-end port bottleneck)
    std::optional<LayerRate> best;
    auto consider = [&](std::size_t q) {
      const AuxEdge& e = g_.edges[path.edges[q]];
      if (!e.carries_capacity() || !eth_rate(e.native_rate)) return;
      const auto& tl = g_.nodes[e.a].tl;
      if (!tl || !(*tl == popped)) return;
      if (!best || rate_mbps(*e.native_rate) < rate_mbps(*best))
        best = e.native_rate;
    };
    for (std::size_t q = 0; q < push_pos; ++q) consider(q);
    for (std::size_t q = pop_pos + 1; q < path.edges.size(); ++q) consider(q);
    if (best) return *best;
    // protection segments start at the push; size to the demand instead
    return active_demand_ <= rate_mbps(LayerRate::GE) ? LayerRate::GE
                                                      : LayerRate::TENGE;
  }
  throw Error("no bearer rate for layer " + tl_name(popped));
}

std::vector<EdgeIdx> Provisioner::create_logical_links(
    const PathResult& path, std::vector<EdgeIdx>& cover, Journal& j) {
  cover.assign(path.edges.size(), kNoEdge);
  const auto nodes = path.nodes_along(g_);
  struct Frame {
    TechLayer tl;
    std::size_t pos;
    NodeIdx client_node;
  };
  std::vector<Frame> stack;
  std::vector<EdgeIdx> created;

  for (std::size_t pos = 0; pos < path.edges.size(); ++pos) {
    const EdgeIdx ei = path.edges[pos];
    const AuxEdge& e = g_.edges[ei];
    if (e.kind != EdgeKind::ADAPTATION) continue;
    const NodeIdx from = nodes[pos];
    const NodeIdx to = nodes[pos + 1];
    const TechLayer cur_tl = *g_.nodes[from].tl;
    const TechLayer adj_tl = *g_.nodes[to].tl;

    if (stack.empty()) {
      stack.push_back({cur_tl, pos, from});
      continue;
    }
    if (e.client_node == to) {  // server-to-client, the matched pop
      if (!(stack.back().tl == adj_tl))
        throw Error("unbalanced adaptation replay on provisioned path");
      const Frame f = stack.back();
      stack.pop_back();
      if (is_service_layer(f.tl) || f.client_node == to) continue;

      std::vector<EdgeIdx> under;
      for (std::size_t q = f.pos + 1; q < pos; ++q) {
        EdgeIdx u = cover[q] != kNoEdge ? cover[q] : path.edges[q];
        if (cover[q] == kNoEdge && !g_.edges[u].carries_capacity()) continue;
        if (under.empty() || under.back() != u) under.push_back(u);
      }
      if (under.empty()) continue;

      const LayerRate crate = container_rate_for(path, f.pos, pos, f.tl);
      charge_span(path, nodes, cover, f.pos + 1, pos, crate, Mbps(0),
                  /*both_arcs=*/true, /*bearer=*/true, j);

      AuxEdge ne;
      ne.id = "log#c" + std::to_string(g_.logical_seq++);
      ne.a = f.client_node;
      ne.b = to;
      ne.kind = EdgeKind::LOGICAL;
      ne.pool = CapacityPool::for_link(crate);
      ne.native_rate = crate;
      ne.created = true;
      ne.underlying = under;
      std::set<std::string> srlgs;
      std::vector<double> weights;
      for (EdgeIdx u : under) {
        ne.distance_km += g_.edges[u].distance_km;
        srlgs.insert(g_.edges[u].srlg_ids.begin(), g_.edges[u].srlg_ids.end());
        weights.push_back(g_.edges[u].weight_initial);
      }
      ne.srlg_ids.assign(srlgs.begin(), srlgs.end());
      ne.weight_initial = initial_logical_weight(weights, wp_);
      ne.weight_dynamic = dynamic_weight(ne, 0.0, wp_);
      const EdgeIdx idx = g_.add_edge(std::move(ne));
      j.created_edges += 1;
      created.push_back(idx);
      for (std::size_t q = f.pos + 1; q < pos; ++q) cover[q] = idx;
    } else {  // client-to-server
      stack.push_back({cur_tl, pos, from});
    }
  }
  return created;
}

std::vector<EdgeIdx> Provisioner::check_and_create_logical_links(
    const PathResult& path, std::vector<EdgeIdx>& cover,
    const std::string& request_id) {
  Journal j;
  j.seq_before = g_.logical_seq;
  active_request_ = request_id;
  try {
    auto created = create_logical_links(path, cover, j);
    commit(j);
    return created;
  } catch (...) {
    rollback(j);
    throw;
  }
}

void Provisioner::rollback(Journal& j) {
  for (auto it = j.consumed.rbegin(); it != j.consumed.rend(); ++it)
    g_.edges[it->edge].pool->restore(it->rate, it->cap);
  for (std::size_t i = 0; i < j.created_edges; ++i) g_.remove_last_edge();
  g_.logical_seq = j.seq_before;
  j = Journal{};
}

void Provisioner::commit(Journal& j) {
  ledger_.insert(ledger_.end(), j.pending.begin(), j.pending.end());
}

ProvisioningResult Provisioner::find_path(const ServiceRequest& req,
                                          bool provision) {
  ProvisioningResult res;
  res.request_id = req.id;
  active_request_ = req.id;
  active_demand_ = demanded_mbps(req.rate, req.capacity_mbps);
  if (req.n < 1) throw ValidationError("request " + req.id + ": n must be >= 1");
  const TechLayer svc = service_layer_for(req.rate);
  const NodeIdx src = g_.tech_layer_node(req.src_ne, svc);
  const NodeIdx dst = g_.tech_layer_node(req.dst_ne, svc);
  if (src == kNoNode || dst == kNoNode)
    throw ValidationError("request " + req.id + ": endpoint lacks a " +
                          tl_name(svc) + " node");

  // Step 1: edges that cannot carry the demand leave the view.
  ScopedRemoval filter(g_);
  for (const auto& e : g_.edges)
    if (e.active && e.pool && !e.pool->feasible(req.rate, req.capacity_mbps))
      filter.remove(e.idx);

  const WeightFn wf = dynamic_weight_view(wp_);
  if (req.path_type == PathType::UNPROTECTED) {
    res.paths = find_unprotected_path(g_, src, dst,
                                      static_cast<std::size_t>(req.n), wf);
    if (res.paths.empty()) return res;
  } else {
    res.protected_paths =
        find_lpp(g_, src, dst, static_cast<std::size_t>(req.n), wf);
    if (res.protected_paths.empty()) return res;
  }
  if (req.n > 1 || !provision) {
    res.status = ProvisionStatus::CANDIDATES_ONLY;
    return res;
  }

  Journal j;
  j.seq_before = g_.logical_seq;
  const bool dedicated = req.path_type == PathType::LPP;
  std::vector<const PathResult*> to_commit;
  if (req.path_type == PathType::UNPROTECTED) {
    to_commit.push_back(&res.paths[0]);
  } else {
    to_commit.push_back(&res.protected_paths[0].working);
    for (const auto& ps : res.protected_paths[0].protection)
      to_commit.push_back(&ps.path);
  }
  try {
    for (const PathResult* p : to_commit) {
      std::vector<EdgeIdx> cover;
      for (EdgeIdx c : create_logical_links(*p, cover, j))
        res.created_logical_links.push_back(g_.edges[c].id);
      charge_span(*p, p->nodes_along(g_), cover, 0, p->edges.size(), req.rate,
                  req.capacity_mbps, dedicated, /*bearer=*/false, j);
    }
  } catch (const CapacityError& ex) {
    rollback(j);
    res.created_logical_links.clear();
    res.status = ProvisionStatus::REJECTED_CAPACITY;
    res.reject_reason = ex.what();
    return res;
  }
  res.provisioned_mbps_total = j.total;
  commit(j);
  res.accepted = true;
  res.status = ProvisionStatus::ACCEPTED;
  return res;
}

void verify_conservation(const AuxGraph& g,
                         const std::vector<LedgerEntry>& ledger) {
  std::map<std::string, Mbps> charged;
  for (const auto& l : ledger) charged[l.edge_id] += l.amount;
  for (const auto& e : g.edges) {
    if (!e.pool) continue;
    const Mbps used = e.pool->max_mbps - e.pool->available_mbps;
    auto it = charged.find(e.id);
    const Mbps expect = it == charged.end() ? Mbps(0) : it->second;
    if (used != expect)
      throw Error("conservation mismatch on " + e.id + ": pool says " +
                  to_string(used) + ", ledger says " + to_string(expect));
  }
  for (const auto& [id, amount] : charged)
    if (g.find_edge(id) == kNoEdge)
      throw Error("ledger references missing edge " + id);
}

}  // namespace mlpce
