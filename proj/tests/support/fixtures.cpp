#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace mlpce::testing {

namespace {

NetworkElement sdh_ne(const std::string& id) {
  NetworkElement ne;
  ne.id = id;
  ne.location = "m";
  ne.supported = {kSdhService, kSdhVc4};
  ne.adaptations = {{kSdhService, kSdhVc4}};
  return ne;
}

LinkSpec vc4_link(const std::string& id, const std::string& a,
                  const std::string& b, LayerRate rate, double dist,
                  const std::string& srlg) {
  LinkSpec l;
  l.id = id;
  l.ne_a = a;
  l.tl_a = kSdhVc4;
  l.ne_b = b;
  l.tl_b = kSdhVc4;
  l.rate = rate;
  l.distance_km = dist;
  l.srlg_ids = {srlg};
  return l;
}

}  // namespace

Network metro_fixture() {
  Network net;
  for (const char* id : {"a", "b", "c", "d", "e", "f", "g", "h", "k", "l"})
    net.elements.push_back(sdh_ne(id));

  auto ring_link = [&](const std::string& a, const std::string& b) {
    const std::string id = a + b;
    net.links.push_back(vc4_link(id, a, b, LayerRate::STM64, 1.0, "s-" + id));
    return id;
  };
  Topology core;
  core.id = "core";
  core.kind = TopologyKind::CORE_RING;
  for (auto [a, b] : {std::pair{"a", "b"}, {"b", "c"}, {"c", "d"},
                      {"d", "e"}, {"e", "a"}})
    core.member_links.push_back(ring_link(a, b));
  net.topologies.push_back(core);

  Topology agg;
  agg.id = "aggring";
  agg.kind = TopologyKind::RING_WITH_AGG;
  agg.aggregates = {"b"};
  for (auto [a, b] :
       {std::pair{"b", "f"}, {"f", "g"}, {"g", "h"}, {"h", "b"}})
    agg.member_links.push_back(ring_link(a, b));
  net.topologies.push_back(agg);

  Topology dh;
  dh.id = "dhring";
  dh.kind = TopologyKind::DUAL_HOMING;
  dh.aggregates = {"c", "d"};
  for (auto [a, b] : {std::pair{"c", "k"}, {"k", "l"}, {"l", "d"}})
    dh.member_links.push_back(ring_link(a, b));
  net.topologies.push_back(dh);
  return net;
}

Network sdh_over_otn_fixture() {
  Network net;
  NetworkElement a = sdh_ne("nea");
  a.supported.push_back(kOtnOdu);
  a.adaptations.push_back({kSdhVc4, kOtnOdu});
  NetworkElement c = a;
  c.id = "nec";
  NetworkElement b;
  b.id = "neb";
  b.location = "m";
  b.supported = {kOtnOdu};
  net.elements = {a, b, c};

  auto odu_link = [&](const std::string& id, const std::string& x,
                      const std::string& y) {
    LinkSpec l;
    l.id = id;
    l.ne_a = x;
    l.tl_a = kOtnOdu;
    l.ne_b = y;
    l.tl_b = kOtnOdu;
    l.rate = LayerRate::VC4;  // exactly one vc4 bearer of room
    l.distance_km = 10.0;
    l.srlg_ids = {"s-" + id};
    return l;
  };
  net.links.push_back(odu_link("ab", "nea", "neb"));
  net.links.push_back(odu_link("bc", "neb", "nec"));
  return net;
}

Network trace_fixture() {
  Network net;
  for (const char* id : {"p1", "p2", "p3"}) net.elements.push_back(sdh_ne(id));
  for (const char* id : {"t1", "t2", "t3", "t4"}) {
    NetworkElement ne;
    ne.id = id;
    ne.location = "m";
    ne.supported = {kOtnOdu};
    net.elements.push_back(ne);
  }

  auto odu = [&](const std::string& id, const std::string& a,
                 const std::string& b) {
    LinkSpec l;
    l.id = id;
    l.ne_a = a;
    l.tl_a = kOtnOdu;
    l.ne_b = b;
    l.tl_b = kOtnOdu;
    l.rate = LayerRate::ODU2;
    l.distance_km = 5.0;
    l.srlg_ids = {"s-" + id};
    return l;
  };
  auto patch = [&](const std::string& id, const std::string& port,
                   const std::string& tr) {
    LinkSpec l;
    l.id = id;
    l.ne_a = port;
    l.tl_a = kSdhVc4;
    l.ne_b = tr;
    l.tl_b = kOtnOdu;
    l.rate = LayerRate::VC4;
    l.distance_km = 0.1;
    l.client_end = 'a';
    l.client_rate = LayerRate::VC4;
    l.srlg_ids = {"s-" + id};
    return l;
  };
  net.links.push_back(patch("x1", "p1", "t1"));
  net.links.push_back(odu("w1", "t1", "t2"));
  net.links.push_back(odu("w2", "t2", "t3"));
  net.links.push_back(patch("x2", "p2", "t3"));
  // dead end: a port patched to a transponder with no onward chain
  net.links.push_back(patch("x3", "p3", "t4"));
  return net;
}

RandomNet random_layered_net(RandomSource& rng, int max_elements,
                             bool with_srlgs) {
  struct Chain {
    TechLayer svc, mid, low;
    LayerRate mid_rate, low_rate;
  };
  static const Chain kChains[] = {
      {kSdhService, kSdhVc4, kOtnOdu, LayerRate::STM16, LayerRate::ODU2},
      {kEthService, kEthLink, kOtnOdu, LayerRate::GE, LayerRate::ODU2},
  };
  const Chain& ch = kChains[rng.uniform_u64(0, 1)];
  const int n = static_cast<int>(rng.uniform_u64(3, max_elements));

  RandomNet rn;
  for (int i = 0; i < n; ++i) {
    NetworkElement ne;
    ne.id = "n" + std::to_string(i);
    ne.location = "x";
    ne.supported = {ch.mid};
    if (rng.uniform_u64(0, 99) < 55) {
      ne.supported.push_back(ch.low);
      if (rng.uniform_u64(0, 99) < 85)
        ne.adaptations.push_back({ch.mid, ch.low});
    }
    rn.net.elements.push_back(ne);
  }
  for (int i = 0; i < n; ++i) {
    auto& ne = rn.net.elements[i];
    if (i <= 1 || rng.uniform_u64(0, 99) < 30) {
      ne.supported.push_back(ch.svc);
      ne.adaptations.push_back({ch.svc, ch.mid});
    }
  }
  rn.src_ne = "n0";
  rn.dst_ne = "n1";

  const int max_edges = 25;
  int edges = 0;
  const int srlg_count = with_srlgs ? static_cast<int>(rng.uniform_u64(2, 4)) : 0;
  auto add_links = [&](TechLayer tl, LayerRate rate, int tries) {
    for (int t = 0; t < tries && edges < max_edges; ++t) {
      const int i = static_cast<int>(rng.uniform_u64(0, n - 1));
      const int j = static_cast<int>(rng.uniform_u64(0, n - 1));
      if (i == j) continue;
      auto& na = rn.net.elements[i];
      auto& nb = rn.net.elements[j];
      if (!na.supports(tl) || !nb.supports(tl)) continue;
      LinkSpec l;
      l.id = "e" + std::to_string(edges);
      l.ne_a = na.id;
      l.tl_a = tl;
      l.ne_b = nb.id;
      l.tl_b = tl;
      l.rate = rate;
      l.distance_km = std::round(rng.uniform_real(1.0, 40.0) * 100.0) / 100.0;
      if (srlg_count > 0)
        l.srlg_ids = {"g" + std::to_string(rng.uniform_u64(
                               0, static_cast<std::uint64_t>(srlg_count - 1)))};
      if (rng.uniform_u64(0, 99) < 12) {
        l.self_protected = true;
        Topology t1p1;
        t1p1.id = "p-" + l.id;
        t1p1.kind = TopologyKind::LINEAR_1P1;
        t1p1.member_links = {l.id};
        rn.net.topologies.push_back(t1p1);
      }
      rn.net.links.push_back(l);
      edges += 1;
    }
  };
  add_links(ch.mid, ch.mid_rate, 3 * n);
  add_links(ch.low, ch.low_rate, 2 * n);
  return rn;
}

BuiltFixture build_random(const RandomNet& rn, std::uint64_t weight_seed) {
  RandomSource rng(weight_seed);
  BuiltFixture f;
  f.wp.set_alpha(std::round(rng.uniform_real(0.1, 0.9) * 10.0) / 10.0);
  f.graph = build_auxiliary_graph(rn.net, f.wp);
  derive_normalizers(f.graph, f.wp);
  const NetworkElement* s = rn.net.find_element(rn.src_ne);
  const TechLayer svc = s->supports(kSdhService) ? kSdhService : kEthService;
  f.src = f.graph.tech_layer_node(rn.src_ne, svc);
  f.dst = f.graph.tech_layer_node(rn.dst_ne, svc);
  return f;
}

}  // namespace mlpce::testing
