#include "netgen.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace mlpce {

namespace {

// NE layer classes. The mix matches the published node/adaptation totals:
// cores carry no service layers, dual-tech ring elements carry SDH and
// Ethernet services (with Ethernet-over-SDH and CES-over-Ethernet mappings),
// ETH-only ring elements add an MPLS-TP tunnel layer.
NetworkElement make_core_ne(std::string id, std::string loc) {
  NetworkElement ne;
  ne.id = std::move(id);
  ne.location = std::move(loc);
  ne.supported = {kSdhVc4, kEthLink, kOtnOdu, kWdmOch};
  ne.adaptations = {{kSdhVc4, kOtnOdu}, {kEthLink, kOtnOdu}, {kOtnOdu, kWdmOch}};
  return ne;
}

NetworkElement make_dual_ne(std::string id, std::string loc) {
  NetworkElement ne;
  ne.id = std::move(id);
  ne.location = std::move(loc);
  ne.supported = {kSdhService, kSdhVc4, kEthService, kEthLink};
  ne.adaptations = {{kSdhService, kSdhVc4},
                    {kSdhService, kEthLink},
                    {kEthService, kEthLink},
                    {kEthService, kSdhVc4}};
  return ne;
}

NetworkElement make_eth_ne(std::string id, std::string loc) {
  NetworkElement ne;
  ne.id = std::move(id);
  ne.location = std::move(loc);
  ne.supported = {kEthService, kEthLink, kMplsTunnel};
  ne.adaptations = {{kEthService, kEthLink},
                    {kEthService, kMplsTunnel},
                    {kMplsTunnel, kEthLink}};
  return ne;
}

TechLayer layer_for_rate(LayerRate r) {
  switch (r) {
    case LayerRate::OCH: return kWdmOch;
    case LayerRate::GE:
    case LayerRate::TENGE: return kEthLink;
    default: return kSdhVc4;
  }
}

struct Builder {
  Network net;
  RandomSource rng;
  const GenParams& p;
  int span_seq = 0;

  Builder(const GenParams& params, std::uint64_t seed)
      : rng(seed), p(params) {}

  double dist(const std::array<double, 2>& range) {
    return std::round(rng.uniform_real(range[0], range[1]) * 1000.0) / 1000.0;
  }

  std::string new_span() { return "srlg#" + std::to_string(span_seq++); }

  std::string add_link(const std::string& a, const std::string& b,
                       LayerRate rate, int channels, double d,
                       const std::string& srlg, bool self_prot = false) {
    LinkSpec l;
    l.id = a + "~" + b + "~" + std::string(rate_name(rate)) + "~" +
           std::to_string(per_pair_seq[{a, b, rate}]++);
    l.ne_a = a;
    l.tl_a = layer_for_rate(rate);
    l.ne_b = b;
    l.tl_b = layer_for_rate(rate);
    l.rate = rate;
    l.channels = channels;
    l.distance_km = d;
    l.self_protected = self_prot;
    l.srlg_ids = {srlg};
    net.links.push_back(l);
    return l.id;
  }

  std::map<std::tuple<std::string, std::string, LayerRate>, int> per_pair_seq;

  void add_topology(std::string id, TopologyKind kind,
                    std::vector<std::string> links,
                    std::vector<std::string> aggs) {
    net.topologies.push_back(
        {std::move(id), kind, std::move(links), std::move(aggs)});
  }

  // A ring over the given elements (cycle in order), one link per hop plus
  // the closing hop; 2-node rings close with a second parallel link.
  void add_ring(const std::string& topo_id, TopologyKind kind,
                const std::vector<std::string>& nes, LayerRate rate,
                const std::vector<std::string>& aggs) {
    std::vector<std::string> links;
    const std::size_t n = nes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = nes[i];
      const auto& b = nes[(i + 1) % n];
      links.push_back(
          add_link(a, b, rate, 1, dist(p.ring_dist_km), new_span()));
    }
    add_topology(topo_id, kind, links, aggs);
  }

  // Dual homing chain agg_a - members... - agg_b.
  void add_chain(const std::string& topo_id, const std::vector<std::string>& nes,
                 LayerRate rate) {
    std::vector<std::string> links;
    for (std::size_t i = 0; i + 1 < nes.size(); ++i)
      links.push_back(add_link(nes[i], nes[i + 1], rate, 1,
                               dist(p.ring_dist_km), new_span()));
    add_topology(topo_id, TopologyKind::DUAL_HOMING, links,
                 {nes.front(), nes.back()});
  }

  // One 1+1 protected link per technology, modeled as a single self-protected
  // edge inside its own linear topology.
  void add_1p1(const std::string& topo_prefix, const std::string& a,
               const std::string& b) {
    const std::string span = new_span();
    const double d = dist(p.ring_dist_km);
    add_topology(topo_prefix + "#sdh", TopologyKind::LINEAR_1P1,
                 {add_link(a, b, LayerRate::STM64, 1, d, span, true)}, {});
    add_topology(topo_prefix + "#eth", TopologyKind::LINEAR_1P1,
                 {add_link(a, b, LayerRate::TENGE, 1, d, span, true)}, {});
  }
};

std::vector<std::pair<int, int>> nld_adjacency(int locations, int want_links) {
  std::vector<std::pair<int, int>> out;
  if (locations < 2) return out;
  for (int i = 0; i < locations; ++i)
    out.push_back({i, (i + 1) % locations});
  if (locations == 2) out.resize(1);
  static const std::pair<int, int> kChords[] = {{0, 5},  {1, 8},  {2, 10},
                                                {3, 12}, {4, 9},  {6, 13},
                                                {7, 11}, {5, 14}};
  for (const auto& [a, b] : kChords) {
    if (static_cast<int>(out.size()) >= want_links) break;
    if (a >= locations || b >= locations) continue;
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

std::string loc_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "l%02d", i);
  return buf;
}

}  // namespace

void GenParams::validate() const {
  if (locations < 1) throw ValidationError("locations must be >= 1");
  if (metro_core_nodes < 1) throw ValidationError("metro core needs a node");
  if (dh_chain_nodes < 3)
    throw ValidationError("dual homing chain needs >= 3 nodes");
  if (eth_core_ring_nodes != 0 && eth_core_ring_nodes < 2)
    throw ValidationError("core ring needs >= 2 nodes");
  for (int s : eth_ring_sizes)
    if (s < 2) throw ValidationError("ring needs >= 2 nodes");
  for (auto r : {nld_dist_km, metro_dist_km, ring_dist_km})
    if (r[0] <= 0 || r[1] < r[0]) throw ValidationError("bad distance range");
}

GenTotals predicted_totals(const GenParams& p) {
  GenTotals t;
  const std::size_t L = static_cast<std::size_t>(p.locations);
  const std::size_t mc = p.metro_core_nodes;
  const std::size_t dh_inner = p.dh_chain_nodes - 2;
  const std::size_t spans = p.dh_chain_nodes - 1;
  std::size_t eth_ring_nodes = 0, eth_ring_links = 0;
  for (int s : p.eth_ring_sizes) {
    eth_ring_nodes += s - 1;
    eth_ring_links += s;
  }
  const std::size_t ecr = p.eth_core_ring_nodes;

  const std::size_t dual = 2 * p.agg_ring_pairs + p.access_rings +
                           p.dh_chain_nodes * p.agg_dh_pairs +
                           2 * p.agg_dh_pairs * spans * p.access_dh_per_span +
                           4 * p.random_agg_ring_pairs +
                           2 * p.linear_chain_pairs;
  const std::size_t eth = eth_ring_nodes + 2 * p.eth_dh_rings + ecr;
  const std::size_t per_loc_ne = 1 + mc + dual + eth;
  t.elements = L * per_loc_ne;

  const std::size_t mesh = mc * (mc - 1) / 2;
  const std::size_t per_loc_links =
      mesh + 2 + 6 * p.agg_ring_pairs + 4 * p.access_rings +
      (2 * spans + 4) * p.agg_dh_pairs +
      6 * p.agg_dh_pairs * spans * p.access_dh_per_span +
      10 * p.random_agg_ring_pairs + 4 * p.linear_chain_pairs +
      eth_ring_links + 3 * p.eth_dh_rings + (ecr ? ecr + 1 : 0);
  std::size_t nld = nld_adjacency(p.locations, p.nld_links).size();
  t.links = L * per_loc_links + nld;

  t.special_edges =
      L * (2 * p.agg_ring_pairs + 2 * p.access_rings +
           2 * (p.dh_chain_nodes - 2 + 2) * p.agg_dh_pairs +
           8 * p.agg_dh_pairs * spans * p.access_dh_per_span +
           6 * p.random_agg_ring_pairs + eth_ring_nodes + 4 * p.eth_dh_rings +
           (ecr ? ecr * (ecr - 1) / 2 : 0));
  t.hub_nodes = L * (2 * p.agg_dh_pairs +
                     2 * p.agg_dh_pairs * spans * p.access_dh_per_span +
                     p.eth_dh_rings);
  t.tech_layer_nodes = L * (4 * (1 + mc) + 4 * dual + 3 * eth);
  t.adaptation_edges = L * (3 * (1 + mc) + 4 * dual + 3 * eth);
  (void)dh_inner;
  return t;
}

Network generate(const GenParams& params, std::uint64_t seed) {
  params.validate();
  Builder b(params, seed);
  const GenParams& p = params;

  std::vector<std::string> nld_nes;
  for (int li = 0; li < p.locations; ++li) {
    const std::string loc = loc_name(li);
    const std::string nld = loc + "-nld";
    nld_nes.push_back(nld);
    b.net.elements.push_back(make_core_ne(nld, loc));

    // metro core mesh
    std::vector<std::string> mcs;
    for (int m = 0; m < p.metro_core_nodes; ++m) {
      mcs.push_back(loc + "-mc" + std::to_string(m));
      b.net.elements.push_back(make_core_ne(mcs.back(), loc));
    }
    std::vector<std::string> mesh_links;
    for (std::size_t i = 0; i < mcs.size(); ++i)
      for (std::size_t j = i + 1; j < mcs.size(); ++j)
        mesh_links.push_back(b.add_link(mcs[i], mcs[j], LayerRate::OCH,
                                        p.metro_channels,
                                        b.dist(p.metro_dist_km), b.new_span()));
    if (!mesh_links.empty())
      b.add_topology(loc + "-mesh", TopologyKind::MESH, mesh_links, {});
    b.add_1p1(loc + "-nldic", nld, mcs[0]);

    // aggregate rings (SDH + ETH pairs on shared elements)
    std::vector<std::string> agg_nodes;
    for (int i = 0; i < p.agg_ring_pairs; ++i) {
      std::vector<std::string> nes;
      for (int k = 0; k < 2; ++k) {
        nes.push_back(loc + "-ar" + std::to_string(i) + "-n" +
                      std::to_string(k));
        b.net.elements.push_back(make_dual_ne(nes.back(), loc));
        agg_nodes.push_back(nes.back());
      }
      b.add_ring(loc + "-ar" + std::to_string(i) + "#sdh",
                 TopologyKind::RING_WITH_AGG, nes, LayerRate::STM64, {nes[0]});
      b.add_ring(loc + "-ar" + std::to_string(i) + "#eth",
                 TopologyKind::RING_WITH_AGG, nes, LayerRate::TENGE, {nes[0]});
      b.add_1p1(loc + "-aric" + std::to_string(i), nes[0],
                mcs[i % mcs.size()]);
    }

    // access rings at aggregate ring nodes
    for (int j = 0; j < p.access_rings; ++j) {
      const std::string& attach = agg_nodes[j % agg_nodes.size()];
      const std::string ne = loc + "-ac" + std::to_string(j) + "-n0";
      b.net.elements.push_back(make_dual_ne(ne, loc));
      b.add_ring(loc + "-ac" + std::to_string(j) + "#sdh",
                 TopologyKind::RING_WITH_AGG, {attach, ne}, LayerRate::STM16,
                 {attach});
      b.add_ring(loc + "-ac" + std::to_string(j) + "#eth",
                 TopologyKind::RING_WITH_AGG, {attach, ne}, LayerRate::GE,
                 {attach});
    }

    // dual homing chains with access dual homing rings on their spans
    int ad_seq = 0;
    for (int i = 0; i < p.agg_dh_pairs; ++i) {
      std::vector<std::string> nes;
      for (int k = 0; k < p.dh_chain_nodes; ++k) {
        nes.push_back(loc + "-dh" + std::to_string(i) + "-n" +
                      std::to_string(k));
        b.net.elements.push_back(make_dual_ne(nes.back(), loc));
      }
      b.add_chain(loc + "-dh" + std::to_string(i) + "#sdh", nes,
                  LayerRate::STM64);
      b.add_chain(loc + "-dh" + std::to_string(i) + "#eth", nes,
                  LayerRate::TENGE);
      b.add_1p1(loc + "-dhic" + std::to_string(i) + "a", nes.front(),
                mcs[(2 * i) % mcs.size()]);
      b.add_1p1(loc + "-dhic" + std::to_string(i) + "b", nes.back(),
                mcs[(2 * i + 1) % mcs.size()]);

      for (int s = 0; s + 1 < p.dh_chain_nodes; ++s) {
        for (int r = 0; r < p.access_dh_per_span; ++r) {
          const std::string base = loc + "-ad" + std::to_string(ad_seq++);
          std::vector<std::string> chain{nes[s], base + "-n0", base + "-n1",
                                         nes[s + 1]};
          b.net.elements.push_back(make_dual_ne(chain[1], loc));
          b.net.elements.push_back(make_dual_ne(chain[2], loc));
          b.add_chain(base + "#sdh", chain, LayerRate::STM16);
          b.add_chain(base + "#eth", chain, LayerRate::GE);
        }
      }
    }

    // random aggregate rings: fresh 4-node rings at a random core attach
    for (int i = 0; i < p.random_agg_ring_pairs; ++i) {
      std::vector<std::string> nes;
      for (int k = 0; k < 4; ++k) {
        nes.push_back(loc + "-rr" + std::to_string(i) + "-n" +
                      std::to_string(k));
        b.net.elements.push_back(make_dual_ne(nes.back(), loc));
      }
      b.add_ring(loc + "-rr" + std::to_string(i) + "#sdh",
                 TopologyKind::RING_WITH_AGG, nes, LayerRate::STM64, {nes[0]});
      b.add_ring(loc + "-rr" + std::to_string(i) + "#eth",
                 TopologyKind::RING_WITH_AGG, nes, LayerRate::TENGE, {nes[0]});
      const std::string& attach =
          mcs[b.rng.uniform_u64(0, mcs.size() - 1)];
      b.add_1p1(loc + "-rric" + std::to_string(i), nes[0], attach);
    }

    // 1+1 protected linear spurs off the metro core
    std::vector<std::string> spur_nes;
    for (int c = 0; c < p.linear_chain_pairs; ++c) {
      const std::string base = loc + "-lc" + std::to_string(c);
      const std::string n0 = base + "-n0", n1 = base + "-n1";
      b.net.elements.push_back(make_dual_ne(n0, loc));
      b.net.elements.push_back(make_dual_ne(n1, loc));
      spur_nes.push_back(n0);
      spur_nes.push_back(n1);
      b.add_1p1(base + "#s0", mcs[c % mcs.size()], n0);
      b.add_1p1(base + "#s1", n0, n1);
    }
    if (spur_nes.empty()) spur_nes = agg_nodes;

    // ETH-only access rings (MPLS-TP capable elements)
    for (std::size_t r = 0; r < p.eth_ring_sizes.size(); ++r) {
      const std::string& attach = spur_nes[(2 * r) % spur_nes.size()];
      std::vector<std::string> nes{attach};
      for (int k = 0; k + 1 < p.eth_ring_sizes[r]; ++k) {
        nes.push_back(loc + "-er" + std::to_string(r) + "-n" +
                      std::to_string(k));
        b.net.elements.push_back(make_eth_ne(nes.back(), loc));
      }
      b.add_ring(loc + "-er" + std::to_string(r) + "#eth",
                 TopologyKind::RING_WITH_AGG, nes, LayerRate::GE, {attach});
    }

    // ETH-only dual homing access rings across spur spans
    for (int k = 0; k < p.eth_dh_rings; ++k) {
      const std::string base = loc + "-ed" + std::to_string(k);
      const std::string& pa = spur_nes[(2 * k) % spur_nes.size()];
      const std::string& pb = spur_nes[(2 * k + 1) % spur_nes.size()];
      std::vector<std::string> chain{pa, base + "-n0", base + "-n1", pb};
      b.net.elements.push_back(make_eth_ne(chain[1], loc));
      b.net.elements.push_back(make_eth_ne(chain[2], loc));
      b.add_chain(base + "#eth", chain, LayerRate::GE);
    }

    // ETH-only core ring, tied into the location by a plain link
    if (p.eth_core_ring_nodes > 0) {
      std::vector<std::string> nes;
      for (int k = 0; k < p.eth_core_ring_nodes; ++k) {
        nes.push_back(loc + "-ecr-n" + std::to_string(k));
        b.net.elements.push_back(make_eth_ne(nes.back(), loc));
      }
      b.add_ring(loc + "-ecr#eth", TopologyKind::CORE_RING, nes, LayerRate::GE,
                 {});
      b.add_topology(loc + "-ecric", TopologyKind::LINEAR_1P1,
                     {b.add_link(nes[0], spur_nes[4 % spur_nes.size()],
                                 LayerRate::GE, 1, b.dist(p.ring_dist_km),
                                 b.new_span(), true)},
                     {});
    }
  }

  // national long distance WDM mesh
  std::vector<std::string> nld_links;
  for (const auto& [i, j] : nld_adjacency(p.locations, p.nld_links))
    nld_links.push_back(b.add_link(nld_nes[i], nld_nes[j], LayerRate::OCH,
                                   p.nld_channels, b.dist(p.nld_dist_km),
                                   b.new_span()));
  if (!nld_links.empty())
    b.add_topology("nld-mesh", TopologyKind::MESH, nld_links, {});

  b.net.canonicalize();
  b.net.validate();
  return b.net;
}

std::vector<ServiceRequest> generate_requests(const Network& net, int n,
                                              std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<std::string> sdh_nes, eth_nes;
  for (const auto& ne : net.elements) {
    if (ne.supports(kSdhService)) sdh_nes.push_back(ne.id);
    if (ne.supports(kEthService)) eth_nes.push_back(ne.id);
  }
  if (sdh_nes.size() < 2 || eth_nes.size() < 2)
    throw ValidationError("network too small for request generation");

  static const LayerRate kRates[] = {LayerRate::VC12, LayerRate::VC3,
                                     LayerRate::VC4, LayerRate::ETH_BW};
  std::vector<ServiceRequest> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    ServiceRequest r;
    r.id = "req" + std::to_string(i);
    r.rate = kRates[rng.uniform_u64(0, 3)];
    const auto& pool =
        service_layer_for(r.rate) == kSdhService ? sdh_nes : eth_nes;
    r.src_ne = pool[rng.uniform_u64(0, pool.size() - 1)];
    do {
      r.dst_ne = pool[rng.uniform_u64(0, pool.size() - 1)];
    } while (r.dst_ne == r.src_ne);
    if (r.rate == LayerRate::ETH_BW)
      r.capacity_mbps = Mbps(rng.uniform_int(1, 200));
    r.path_type = PathType::LPP;
    r.n = 1;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mlpce
