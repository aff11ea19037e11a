#include <map>
#include <sstream>

#include "doctest.h"
#include "graph_build.hpp"
#include "netgen.hpp"
#include "topo_io.hpp"

using namespace mlpce;

TEST_SUITE("netgen") {

TEST_CASE("calibrated defaults reproduce the published totals") {
  GenParams p;
  const auto t = predicted_totals(p);
  CHECK(t.elements == 2955);
  CHECK(t.tech_layer_nodes == 10455);
  CHECK(t.hub_nodes == 480);
  CHECK(t.adaptation_edges == 10380);
  CHECK(t.links == 5393);
  CHECK(t.special_edges == 3540);

  auto net = generate(p, 42);
  CHECK(net.elements.size() == 2955);
  CHECK(net.links.size() == 5393);
  WeightParams wp;
  auto g = build_auxiliary_graph(net, wp);
  const auto c = g.counts();
  CHECK(c.tech_layer_nodes == 10455);
  CHECK(c.hub_nodes == 480);
  CHECK(c.adaptation_edges == 10380);
  CHECK(c.physical_edges == 5393);
  CHECK(c.logical_edges == 0);
  CHECK(c.special_edges == 3540);
  CHECK(c.total_edges == 19313);
}

TEST_CASE("counts are a pure function of params, seed moves only geometry") {
  GenParams p;
  p.locations = 2;
  auto n1 = generate(p, 1);
  auto n2 = generate(p, 99);
  CHECK(n1.elements.size() == n2.elements.size());
  CHECK(n1.links.size() == n2.links.size());
  CHECK(n1.topologies.size() == n2.topologies.size());
  // the seed moves geometry and random attachments, never counts
  bool distance_differs = false;
  for (const auto& l : n1.links)
    if (const LinkSpec* other = n2.find_link(l.id))
      distance_differs |= l.distance_km != other->distance_km;
  CHECK(distance_differs);
  const auto pred = predicted_totals(p);
  CHECK(pred.elements == n1.elements.size());
  CHECK(pred.links == n1.links.size());
}

TEST_CASE("same seed gives byte-identical topology files") {
  GenParams p;
  p.locations = 2;
  std::ostringstream a, b;
  write_network(generate(p, 7), a);
  write_network(generate(p, 7), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("stripped-down params leave the core skeleton") {
  GenParams p;
  p.agg_ring_pairs = 0;
  p.access_rings = 0;
  p.agg_dh_pairs = 0;
  p.access_dh_per_span = 0;
  p.random_agg_ring_pairs = 0;
  p.linear_chain_pairs = 0;
  p.eth_ring_sizes = {};
  p.eth_dh_rings = 0;
  p.eth_core_ring_nodes = 0;
  auto net = generate(p, 1);
  CHECK(net.elements.size() == 15 * (1 + 4));
  CHECK(predicted_totals(p).elements == 75);
}

TEST_CASE("generated networks satisfy every structural validation") {
  GenParams p;
  p.locations = 2;
  auto net = generate(p, 5);
  CHECK_NOTHROW(net.validate());
  WeightParams wp;
  auto g = build_auxiliary_graph(net, wp);
  CHECK_NOTHROW(g.check_consistency());

  // per-topology special edge identities
  for (const auto& [id, info] : g.topologies) {
    std::size_t specials = 0;
    for (const auto& e : g.edges)
      if (e.topology_id == id && (e.kind == EdgeKind::RING_SPECIAL ||
                                  e.kind == EdgeKind::DH_SPECIAL ||
                                  e.kind == EdgeKind::DH_HUB_LEG))
        ++specials;
    const std::size_t n = info.member_nes.size();
    switch (info.topo.kind) {
      case TopologyKind::CORE_RING:
        CHECK(specials == n * (n - 1) / 2);
        break;
      case TopologyKind::RING_WITH_AGG:
        CHECK(specials == n - 1);
        break;
      case TopologyKind::DUAL_HOMING:
        CHECK(specials == (n - 2) + 2);
        break;
      default:
        CHECK(specials == 0);
    }
  }
}

TEST_CASE("request generation is deterministic and in range") {
  GenParams p;
  p.locations = 2;
  auto net = generate(p, 11);
  auto r1 = generate_requests(net, 100, 5);
  auto r2 = generate_requests(net, 100, 5);
  REQUIRE(r1.size() == 100);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].src_ne == r2[i].src_ne);
    CHECK(r1[i].dst_ne == r2[i].dst_ne);
    CHECK(r1[i].rate == r2[i].rate);
    CHECK(r1[i].capacity_mbps == r2[i].capacity_mbps);
  }
  CHECK(generate_requests(net, 0, 5).empty());

  for (const auto& r : r1) {
    CHECK(r.src_ne != r.dst_ne);
    CHECK(r.path_type == PathType::LPP);
    CHECK(r.n == 1);
    const TechLayer svc = service_layer_for(r.rate);
    CHECK(net.find_element(r.src_ne)->supports(svc));
    CHECK(net.find_element(r.dst_ne)->supports(svc));
    if (r.rate == LayerRate::ETH_BW) {
      CHECK(r.capacity_mbps >= Mbps(1));
      CHECK(r.capacity_mbps <= Mbps(200));
    }
  }
}

TEST_CASE("rate mix is roughly uniform across seeds") {
  GenParams p;
  p.locations = 1;
  auto net = generate(p, 3);
  std::map<LayerRate, double> counts;
  int total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& r : generate_requests(net, 500, seed)) {
      counts[r.rate] += 1;
      ++total;
    }
  }
  REQUIRE(counts.size() == 4);
  // chi-square against uniform over 4 cells; 3 dof, 0.999 quantile ~ 16.27
  const double expect = total / 4.0;
  double chi2 = 0.0;
  for (const auto& [rate, n] : counts)
    chi2 += (n - expect) * (n - expect) / expect;
  CHECK(chi2 < 16.27);
}

TEST_CASE("small location counts clamp the long-distance mesh") {
  GenParams p;
  p.locations = 3;
  auto net = generate(p, 1);
  int nld_links = 0;
  for (const auto& l : net.links)
    if (l.ne_a.find("-nld") != std::string::npos &&
        l.ne_b.find("-nld") != std::string::npos)
      ++nld_links;
  CHECK(nld_links == 3);  // a triangle, no chords possible
}

}  // TEST_SUITE
