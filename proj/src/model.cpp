#include "model.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace mlpce {

// ---------------------------------------------------------------------------
// Taxonomy

namespace {

struct TaxonomyRow {
  Technology tech;
  std::initializer_list<Layer> layers;
};

constexpr std::array<std::pair<Technology, Layer>, 9> kTaxonomy{{
    {Technology::PDH, Layer::SERVICE},
    {Technology::SDH, Layer::SERVICE},
    {Technology::SDH, Layer::VC4},
    {Technology::OTN, Layer::ODU},
    {Technology::OTN, Layer::OTU},
    {Technology::WDM, Layer::OCH},
    {Technology::ETH, Layer::SERVICE},
    {Technology::ETH, Layer::LINK},
    {Technology::MPLS_TP, Layer::TUNNEL},
}};

}  // namespace

bool tech_layer_valid(TechLayer tl) {
  for (const auto& [t, l] : kTaxonomy)
    if (t == tl.tech && l == tl.layer) return true;
  return false;
}

void require_tech_layer(TechLayer tl) {
  if (!tech_layer_valid(tl))
    throw ValidationError("illegal technology/layer pair: " + tl_name(tl));
}

std::string_view tech_name(Technology t) {
  switch (t) {
    case Technology::PDH: return "pdh";
    case Technology::SDH: return "sdh";
    case Technology::OTN: return "otn";
    case Technology::WDM: return "wdm";
    case Technology::ETH: return "eth";
    case Technology::MPLS_TP: return "mplstp";
  }
  return "?";
}

std::string_view layer_name(Layer l) {
  switch (l) {
    case Layer::SERVICE: return "service";
    case Layer::VC4: return "vc4";
    case Layer::ODU: return "odu";
    case Layer::OTU: return "otu";
    case Layer::OCH: return "och";
    case Layer::LINK: return "link";
    case Layer::TUNNEL: return "tunnel";
  }
  return "?";
}

std::string tl_name(TechLayer tl) {
  return std::string(tech_name(tl.tech)) + ":" + std::string(layer_name(tl.layer));
}

Technology parse_tech(std::string_view s) {
  if (s == "pdh") return Technology::PDH;
  if (s == "sdh") return Technology::SDH;
  if (s == "otn") return Technology::OTN;
  if (s == "wdm") return Technology::WDM;
  if (s == "eth") return Technology::ETH;
  if (s == "mplstp") return Technology::MPLS_TP;
  throw ValidationError("unknown technology: " + std::string(s));
}

Layer parse_layer(std::string_view s) {
  if (s == "service") return Layer::SERVICE;
  if (s == "vc4") return Layer::VC4;
  if (s == "odu") return Layer::ODU;
  if (s == "otu") return Layer::OTU;
  if (s == "och") return Layer::OCH;
  if (s == "link") return Layer::LINK;
  if (s == "tunnel") return Layer::TUNNEL;
  throw ValidationError("unknown layer: " + std::string(s));
}

TechLayer parse_tech_layer(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos)
    throw ValidationError("bad tech:layer token: " + std::string(s));
  TechLayer tl{parse_tech(s.substr(0, colon)), parse_layer(s.substr(colon + 1))};
  require_tech_layer(tl);
  return tl;
}

// ---------------------------------------------------------------------------
// Rates

Mbps rate_mbps(LayerRate r) {
  switch (r) {
    case LayerRate::VC12: return Mbps(2);
    case LayerRate::VC3: return Mbps(45);
    case LayerRate::VC4: return Mbps(150);
    case LayerRate::STM1: return Mbps(155);
    case LayerRate::STM4: return Mbps(622);
    case LayerRate::STM16: return Mbps(2488);
    case LayerRate::STM64: return Mbps(9953);
    case LayerRate::GE: return Mbps(1000);
    case LayerRate::TENGE: return Mbps(10000);
    case LayerRate::ETH_BW: return Mbps(0);
    case LayerRate::ODU2: return Mbps(10000);
    case LayerRate::OTU2: return Mbps(10000);
    case LayerRate::OCH: return Mbps(10000);
  }
  throw ValidationError("unknown layer rate");
}

Mbps demanded_mbps(LayerRate r, const Mbps& capacity) {
  if (r == LayerRate::ETH_BW) {
    if (capacity <= Mbps(0))
      throw ValidationError("eth_bw request needs capacity > 0");
    return capacity;
  }
  return rate_mbps(r);
}

TechLayer service_layer_for(LayerRate r) {
  switch (r) {
    case LayerRate::VC12:
    case LayerRate::VC3:
    case LayerRate::VC4:
    case LayerRate::STM1:
    case LayerRate::STM4:
    case LayerRate::STM16:
    case LayerRate::STM64:
      return kSdhService;
    case LayerRate::ETH_BW:
    case LayerRate::GE:
    case LayerRate::TENGE:
      return kEthService;
    case LayerRate::ODU2:
    case LayerRate::OTU2:
      return kOtnOdu;
    case LayerRate::OCH:
      return kWdmOch;
  }
  throw ValidationError("unknown layer rate");
}

std::string_view rate_name(LayerRate r) {
  switch (r) {
    case LayerRate::VC12: return "vc12";
    case LayerRate::VC3: return "vc3";
    case LayerRate::VC4: return "vc4";
    case LayerRate::STM1: return "stm1";
    case LayerRate::STM4: return "stm4";
    case LayerRate::STM16: return "stm16";
    case LayerRate::STM64: return "stm64";
    case LayerRate::GE: return "ge";
    case LayerRate::TENGE: return "10ge";
    case LayerRate::ETH_BW: return "eth_bw";
    case LayerRate::ODU2: return "odu2";
    case LayerRate::OTU2: return "otu2";
    case LayerRate::OCH: return "och";
  }
  return "?";
}

LayerRate parse_rate(std::string_view s) {
  if (s == "vc12") return LayerRate::VC12;
  if (s == "vc3") return LayerRate::VC3;
  if (s == "vc4") return LayerRate::VC4;
  if (s == "stm1") return LayerRate::STM1;
  if (s == "stm4") return LayerRate::STM4;
  if (s == "stm16") return LayerRate::STM16;
  if (s == "stm64") return LayerRate::STM64;
  if (s == "ge") return LayerRate::GE;
  if (s == "10ge") return LayerRate::TENGE;
  if (s == "eth_bw") return LayerRate::ETH_BW;
  if (s == "odu2") return LayerRate::ODU2;
  if (s == "otu2") return LayerRate::OTU2;
  if (s == "och") return LayerRate::OCH;
  throw ValidationError("unknown layer rate: " + std::string(s));
}

std::map<LayerRate, std::int64_t> container_seed(LayerRate link_rate) {
  using LR = LayerRate;
  // SDH multiplex numbers: one VC4 holds 3 VC3 or 63 VC12; STM-N holds N VC4.
  auto sdh = [](std::int64_t vc4s) {
    return std::map<LR, std::int64_t>{
        {LR::VC4, vc4s}, {LR::VC3, 3 * vc4s}, {LR::VC12, 63 * vc4s}};
  };
  switch (link_rate) {
    case LR::VC4: return sdh(1);
    case LR::STM1: return sdh(1);
    case LR::STM4: return sdh(4);
    case LR::STM16: return sdh(16);
    case LR::STM64: return sdh(64);
    case LR::GE: return {{LR::GE, 1}};
    case LR::TENGE: return {{LR::TENGE, 1}, {LR::GE, 10}};
    case LR::ODU2:
    case LR::OTU2: {
      auto m = sdh(64);
      m[LR::GE] = 10;
      m[LR::TENGE] = 1;
      m[LR::ODU2] = (link_rate == LR::OTU2) ? 1 : 0;
      if (m[LR::ODU2] == 0) m.erase(LR::ODU2);
      return m;
    }
    case LR::OCH: {
      auto m = sdh(64);
      m[LR::GE] = 10;
      m[LR::TENGE] = 1;
      m[LR::ODU2] = 1;
      m[LR::OTU2] = 1;
      return m;
    }
    case LR::VC12:
    case LR::VC3:
    case LR::ETH_BW:
      return {};
  }
  return {};
}

// ---------------------------------------------------------------------------
// CapacityPool

CapacityPool CapacityPool::for_link(LayerRate rate, int channels) {
  if (channels < 1) throw ValidationError("link needs >= 1 channel");
  CapacityPool p;
  p.max_mbps = rate_mbps(rate) * channels;
  p.available_mbps = p.max_mbps;
  for (const auto& [r, n] : container_seed(rate)) p.containers[r] = n * channels;
  return p;
}

bool CapacityPool::feasible(LayerRate rate, const Mbps& capacity) const {
  const Mbps need = demanded_mbps(rate, capacity);
  if (available_mbps < need) return false;
  if (is_container_rate(rate)) {
    auto it = containers.find(rate);
    if (it == containers.end() || it->second < 1) return false;
  }
  return true;
}

void CapacityPool::consume(LayerRate rate, const Mbps& capacity) {
  if (!feasible(rate, capacity))
    throw CapacityError("consume on infeasible pool (rate " +
                        std::string(rate_name(rate)) + ")");
  available_mbps -= demanded_mbps(rate, capacity);
  if (is_container_rate(rate)) containers[rate] -= 1;
}

void CapacityPool::restore(LayerRate rate, const Mbps& capacity) {
  const Mbps need = demanded_mbps(rate, capacity);
  if (available_mbps + need > max_mbps)
    throw ValidationError("restore beyond pool maximum");
  available_mbps += need;
  if (is_container_rate(rate)) {
    containers[rate] += 1;
    if (containers[rate] * rate_mbps(rate) > max_mbps)
      throw ValidationError("container restore beyond pool maximum");
  }
}

double CapacityPool::utilization() const {
  if (max_mbps <= Mbps(0)) return 0.0;
  return to_double(max_mbps - available_mbps) / to_double(max_mbps);
}

void CapacityPool::validate() const {
  if (available_mbps < Mbps(0) || available_mbps > max_mbps)
    throw ValidationError("pool available outside [0, max]");
  for (const auto& [r, n] : containers) {
    if (n < 0) throw ValidationError("negative container count");
    if (Mbps(n) * rate_mbps(r) > max_mbps && rate_mbps(r) > Mbps(0))
      throw ValidationError("container count exceeds pool maximum");
  }
}

// ---------------------------------------------------------------------------
// Network

bool NetworkElement::supports(TechLayer tl) const {
  return std::find(supported.begin(), supported.end(), tl) != supported.end();
}

const NetworkElement* Network::find_element(const std::string& id) const {
  auto it = std::lower_bound(
      elements.begin(), elements.end(), id,
      [](const NetworkElement& e, const std::string& k) { return e.id < k; });
  if (it != elements.end() && it->id == id) return &*it;
  return nullptr;
}

const LinkSpec* Network::find_link(const std::string& id) const {
  auto it = std::lower_bound(
      links.begin(), links.end(), id,
      [](const LinkSpec& l, const std::string& k) { return l.id < k; });
  if (it != links.end() && it->id == id) return &*it;
  return nullptr;
}

std::vector<Srlg> Network::srlgs() const {
  std::map<std::string, std::vector<std::string>> by_id;
  for (const auto& l : links)
    for (const auto& s : l.srlg_ids) by_id[s].push_back(l.id);
  std::vector<Srlg> out;
  out.reserve(by_id.size());
  for (auto& [id, members] : by_id) {
    std::sort(members.begin(), members.end());
    out.push_back(Srlg{id, std::move(members)});
  }
  return out;
}

void Network::canonicalize() {
  std::sort(elements.begin(), elements.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(links.begin(), links.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(topologies.begin(), topologies.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (auto& e : elements) {
    std::sort(e.supported.begin(), e.supported.end());
    e.supported.erase(std::unique(e.supported.begin(), e.supported.end()),
                      e.supported.end());
    std::sort(e.adaptations.begin(), e.adaptations.end());
  }
  for (auto& l : links) {
    std::sort(l.srlg_ids.begin(), l.srlg_ids.end());
    l.srlg_ids.erase(std::unique(l.srlg_ids.begin(), l.srlg_ids.end()),
                     l.srlg_ids.end());
  }
}

namespace {

using LinkIndex = std::map<std::string, const LinkSpec*>;

// Member links must chain into a single cycle (rings) or a simple path
// between the two aggregates (dual homing).
void check_topology_shape(const LinkIndex& by_id, const Topology& t) {
  auto find_link = [&by_id](const std::string& id) -> const LinkSpec* {
    auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : it->second;
  };
  std::map<std::string, int> degree;
  std::optional<TechLayer> tl;
  for (const auto& lid : t.member_links) {
    const LinkSpec* l = find_link(lid);
    if (!l)
      throw ValidationError("topology " + t.id + ": unknown link " + lid);
    if (l->inter_tech())
      throw ValidationError("topology " + t.id +
                            ": inter-tech link cannot be a member");
    if (!tl) tl = l->tl_a;
    if (!(l->tl_a == *tl))
      throw ValidationError("topology " + t.id + ": mixed member layers");
    degree[l->ne_a] += 1;
    degree[l->ne_b] += 1;
  }
  const size_t n_nodes = degree.size();
  auto connected_count = [&]() {
    if (t.member_links.empty()) return size_t{0};
    std::set<std::string> seen;
    std::vector<std::string> queue{find_link(t.member_links[0])->ne_a};
    seen.insert(queue[0]);
    while (!queue.empty()) {
      auto cur = queue.back();
      queue.pop_back();
      for (const auto& lid : t.member_links) {
        const LinkSpec* l = find_link(lid);
        std::string next;
        if (l->ne_a == cur) next = l->ne_b;
        else if (l->ne_b == cur) next = l->ne_a;
        else continue;
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    return seen.size();
  };

  switch (t.kind) {
    case TopologyKind::CORE_RING:
    case TopologyKind::RING_WITH_AGG: {
      if (n_nodes < 2)
        throw ValidationError("topology " + t.id + ": ring needs >= 2 nodes");
      for (const auto& [ne, d] : degree)
        if (d != 2)
          throw ValidationError("topology " + t.id + ": " + ne +
                                " breaks the ring cycle");
      if (connected_count() != n_nodes)
        throw ValidationError("topology " + t.id + ": ring not a single cycle");
      if (t.kind == TopologyKind::CORE_RING && !t.aggregates.empty())
        throw ValidationError("topology " + t.id + ": core ring has aggregate");
      if (t.kind == TopologyKind::RING_WITH_AGG) {
        if (t.aggregates.size() != 1)
          throw ValidationError("topology " + t.id +
                                ": ring needs exactly 1 aggregate");
        if (!degree.count(t.aggregates[0]))
          throw ValidationError("topology " + t.id +
                                ": aggregate not a ring member");
      }
      break;
    }
    case TopologyKind::DUAL_HOMING: {
      if (t.aggregates.size() != 2)
        throw ValidationError("topology " + t.id +
                              ": dual homing needs exactly 2 aggregates");
      if (n_nodes < 3)
        throw ValidationError("topology " + t.id +
                              ": dual homing needs an inner member");
      for (const auto& [ne, d] : degree) {
        const bool is_agg =
            ne == t.aggregates[0] || ne == t.aggregates[1];
        if (is_agg && d != 1)
          throw ValidationError("topology " + t.id + ": aggregate " + ne +
                                " must terminate the chain");
        if (!is_agg && d != 2)
          throw ValidationError("topology " + t.id + ": " + ne +
                                " breaks the chain");
      }
      if (connected_count() != n_nodes)
        throw ValidationError("topology " + t.id + ": chain disconnected");
      break;
    }
    case TopologyKind::LINEAR_1P1: {
      for (const auto& lid : t.member_links)
        if (!find_link(lid)->self_protected)
          throw ValidationError("topology " + t.id +
                                ": 1+1 member link not self-protected");
      break;
    }
    case TopologyKind::MESH:
      break;
  }
}

}  // namespace

void Network::validate() const {
  std::map<std::string, const NetworkElement*> ne_by_id;
  for (const auto& e : elements) {
    if (!ne_by_id.emplace(e.id, &e).second)
      throw ValidationError("duplicate network element id " + e.id);
    for (auto tl : e.supported) require_tech_layer(tl);
    for (const auto& [client, server] : e.adaptations) {
      if (client == server)
        throw ValidationError("element " + e.id + ": adaptation to same layer");
      if (!e.supports(client) || !e.supports(server))
        throw ValidationError("element " + e.id +
                              ": adaptation endpoint not supported");
    }
  }
  LinkIndex link_by_id;
  auto find_ne = [&ne_by_id](const std::string& id) -> const NetworkElement* {
    auto it = ne_by_id.find(id);
    return it == ne_by_id.end() ? nullptr : it->second;
  };
  for (const auto& l : links) {
    if (!link_by_id.emplace(l.id, &l).second)
      throw ValidationError("duplicate link id " + l.id);
    const NetworkElement* a = find_ne(l.ne_a);
    const NetworkElement* b = find_ne(l.ne_b);
    if (!a || !b)
      throw ValidationError("link " + l.id + ": dangling endpoint");
    if (l.ne_a == l.ne_b)
      throw ValidationError("link " + l.id + ": both ends on one element");
    if (!a->supports(l.tl_a) || !b->supports(l.tl_b))
      throw ValidationError("link " + l.id +
                            ": endpoint layer not supported by element");
    if (l.channels < 1)
      throw ValidationError("link " + l.id + ": channels < 1");
    if (l.distance_km < 0)
      throw ValidationError("link " + l.id + ": negative distance");
    if (l.inter_tech() && (!l.client_end || !l.client_rate))
      throw ValidationError("link " + l.id +
                            ": inter-tech link needs client end and rate");
  }
  std::set<std::string> topo_ids;
  for (const auto& t : topologies) {
    if (!topo_ids.insert(t.id).second)
      throw ValidationError("duplicate topology id " + t.id);
    if (t.member_links.empty())
      throw ValidationError("topology " + t.id + ": no member links");
    for (const auto& agg : t.aggregates)
      if (!find_ne(agg))
        throw ValidationError("topology " + t.id + ": unknown aggregate " + agg);
    check_topology_shape(link_by_id, t);
  }
}

std::string_view topology_kind_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::CORE_RING: return "core_ring";
    case TopologyKind::RING_WITH_AGG: return "agg_ring";
    case TopologyKind::DUAL_HOMING: return "dual_homing";
    case TopologyKind::MESH: return "mesh";
    case TopologyKind::LINEAR_1P1: return "linear_1p1";
  }
  return "?";
}

TopologyKind parse_topology_kind(std::string_view s) {
  if (s == "core_ring") return TopologyKind::CORE_RING;
  if (s == "agg_ring") return TopologyKind::RING_WITH_AGG;
  if (s == "dual_homing") return TopologyKind::DUAL_HOMING;
  if (s == "mesh") return TopologyKind::MESH;
  if (s == "linear_1p1") return TopologyKind::LINEAR_1P1;
  throw ValidationError("unknown topology kind: " + std::string(s));
}

}  // namespace mlpce
