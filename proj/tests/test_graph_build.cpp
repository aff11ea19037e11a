#include <set>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "topo_io.hpp"

using namespace mlpce;
using namespace mlpce::testing;

namespace {

WeightParams wp_default() {
  WeightParams p;
  return p;
}

}  // namespace

TEST_SUITE("graph_build") {

TEST_CASE("one node per layer, one edge per adaptation") {
  Network net;
  NetworkElement ne;
  ne.id = "x";
  ne.location = "m";
  ne.supported = {kSdhService, kSdhVc4, kOtnOdu};
  ne.adaptations = {{kSdhService, kSdhVc4}, {kSdhVc4, kOtnOdu}};
  net.elements = {ne};
  auto g = build_auxiliary_graph(net, wp_default());
  auto c = g.counts();
  CHECK(c.tech_layer_nodes == 3);
  CHECK(c.adaptation_edges == 2);
  CHECK(c.total_edges == 2);
  CHECK(g.find_node("x#sdh#vc4") != kNoNode);
  // adaptation edges know their client end
  for (const auto& e : g.edges) {
    REQUIRE(e.kind == EdgeKind::ADAPTATION);
    CHECK(e.client_node != kNoNode);
  }
}

TEST_CASE("empty network builds an empty graph") {
  Network net;
  auto g = build_auxiliary_graph(net, wp_default());
  CHECK(g.nodes.empty());
  CHECK(g.edges.empty());
}

TEST_CASE("dangling link endpoint names the link") {
  Network net;
  NetworkElement ne;
  ne.id = "x";
  ne.supported = {kSdhVc4};
  net.elements = {ne};
  LinkSpec l;
  l.id = "bad-link";
  l.ne_a = "x";
  l.tl_a = kSdhVc4;
  l.ne_b = "missing";
  l.tl_b = kSdhVc4;
  l.rate = LayerRate::STM16;
  net.links = {l};
  try {
    build_auxiliary_graph(net, wp_default());
    FAIL("expected a build failure");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bad-link") != std::string::npos);
  }
}

TEST_CASE("metro fixture special-edge structure") {
  auto g = build_auxiliary_graph(metro_fixture(), wp_default());
  auto c = g.counts();
  // 10 elements x 2 layers, 12 ring links
  CHECK(c.tech_layer_nodes == 20);
  CHECK(c.hub_nodes == 1);
  CHECK(c.physical_edges == 12);
  // core ring: full mesh over 5 = 10; agg ring: 3 legs; dual homing: 2
  // spokes + 2 aggregate legs
  CHECK(c.special_edges == 10 + 3 + 4);

  SUBCASE("agg ring legs run member to aggregate") {
    for (const char* m : {"f", "g", "h"}) {
      const EdgeIdx e = g.find_edge(std::string("sp#aggring#") + m + "#b");
      REQUIRE(e != kNoEdge);
      CHECK(g.edges[e].self_protected);
      CHECK(g.edges[e].kind == EdgeKind::RING_SPECIAL);
      CHECK(g.edges[e].underlying.size() == 4);
    }
    CHECK(g.find_edge("sp#aggring#b#b") == kNoEdge);  // no self leg
  }
  SUBCASE("core ring is a full mesh of self-protected edges") {
    int n = 0;
    for (const auto& e : g.edges)
      if (e.topology_id == "core" && e.kind == EdgeKind::RING_SPECIAL) {
        ++n;
        CHECK(e.self_protected);
      }
    CHECK(n == 10);
  }
  SUBCASE("dual homing hub, spokes and zero-weight legs") {
    const NodeIdx hub = g.find_node("hub#dhring");
    REQUIRE(hub != kNoNode);
    CHECK(g.nodes[hub].kind == NodeKind::HUB);
    CHECK(g.adjacency[hub].size() == 4);
    for (const char* m : {"k", "l"}) {
      const EdgeIdx e = g.find_edge(std::string("sp#dhring#") + m + "#hub");
      REQUIRE(e != kNoEdge);
      CHECK_FALSE(g.edges[e].self_protected);
      CHECK(g.edges[e].kind == EdgeKind::DH_SPECIAL);
    }
    for (const char* a : {"c", "d"}) {
      const EdgeIdx e = g.find_edge(std::string("hubleg#dhring#") + a);
      REQUIRE(e != kNoEdge);
      CHECK(g.edges[e].weight_initial == 0.0);
    }
  }
  SUBCASE("special pools are the bottleneck of their members") {
    const EdgeIdx e = g.find_edge("sp#aggring#f#b");
    CHECK(g.edges[e].pool->max_mbps == rate_mbps(LayerRate::STM64));
  }
  SUBCASE("special edges carry the union of member srlgs") {
    const EdgeIdx e = g.find_edge("sp#aggring#f#b");
    CHECK(g.edges[e].srlg_ids ==
          std::vector<std::string>{"s-bf", "s-fg", "s-gh", "s-hb"});
  }
  SUBCASE("every special edge of a topology shares one initial weight") {
    double w = -1;
    for (const auto& e : g.edges)
      if (e.topology_id == "core" && e.kind == EdgeKind::RING_SPECIAL) {
        if (w < 0) w = e.weight_initial;
        CHECK(e.weight_initial == doctest::Approx(w));
      }
  }
}

TEST_CASE("ring needs at least two members, two is fine") {
  Network net;
  for (const char* id : {"a", "b"}) {
    NetworkElement ne;
    ne.id = id;
    ne.supported = {kSdhVc4};
    net.elements.push_back(ne);
  }
  auto link = [](const char* id, const char* x, const char* y) {
    LinkSpec l;
    l.id = id;
    l.ne_a = x;
    l.tl_a = kSdhVc4;
    l.ne_b = y;
    l.tl_b = kSdhVc4;
    l.rate = LayerRate::STM16;
    l.distance_km = 1;
    return l;
  };
  net.links = {link("l1", "a", "b"), link("l2", "a", "b")};
  net.topologies = {
      {"r2", TopologyKind::RING_WITH_AGG, {"l1", "l2"}, {"a"}}};
  auto g = build_auxiliary_graph(net, wp_default());
  CHECK(g.counts().special_edges == 1);

  net.topologies[0].member_links = {"l1"};
  CHECK_THROWS(build_auxiliary_graph(net, wp_default()));
}

TEST_CASE("inter-tech trace emits one logical edge per matched pair") {
  auto g = build_auxiliary_graph(trace_fixture(), wp_default());
  auto c = g.counts();
  CHECK(c.logical_edges == 1);  // p3's patch dead-ends
  const EdgeIdx log = g.find_edge("log#p1#sdh#vc4#p2#sdh#vc4");
  REQUIRE(log != kNoEdge);
  const AuxEdge& e = g.edges[log];
  CHECK(e.underlying.size() == 2);
  CHECK(g.edges[e.underlying[0]].id == "w1");
  CHECK(g.edges[e.underlying[1]].id == "w2");
  CHECK(e.distance_km == doctest::Approx(10.0));
  CHECK(e.pool->max_mbps == Mbps(150));
  // logical weight below the sum of its parts
  double sum = 0;
  for (EdgeIdx u : e.underlying) sum += g.edges[u].weight_initial;
  CHECK(e.weight_initial == doctest::Approx(0.7 * sum));
}

TEST_CASE("two independent traces give two disjoint logical edges") {
  Network net = trace_fixture();
  // clone the chain with fresh names
  const auto base_elems = net.elements;
  for (auto ne : base_elems) {
    ne.id = "z" + ne.id;
    net.elements.push_back(ne);
  }
  const auto base_links = net.links;
  for (auto l : base_links) {
    l.id = "z" + l.id;
    l.ne_a = "z" + l.ne_a;
    l.ne_b = "z" + l.ne_b;
    net.links.push_back(l);
  }
  auto g = build_auxiliary_graph(net, wp_default());
  CHECK(g.counts().logical_edges == 2);
  const EdgeIdx a = g.find_edge("log#p1#sdh#vc4#p2#sdh#vc4");
  const EdgeIdx b = g.find_edge("log#zp1#sdh#vc4#zp2#sdh#vc4");
  REQUIRE(a != kNoEdge);
  REQUIRE(b != kNoEdge);
  std::set<EdgeIdx> ua(g.edges[a].underlying.begin(),
                       g.edges[a].underlying.end());
  for (EdgeIdx u : g.edges[b].underlying) CHECK_FALSE(ua.count(u));
}

TEST_CASE("branching or looping server chains dead-end without an edge") {
  Network net = trace_fixture();
  // close t1-t2-t3 into a triangle: the walk from t1 now sees a branch at
  // every step and must give up instead of looping or guessing
  LinkSpec l;
  l.id = "w3";
  l.ne_a = "t3";
  l.tl_a = kOtnOdu;
  l.ne_b = "t1";
  l.tl_b = kOtnOdu;
  l.rate = LayerRate::ODU2;
  l.distance_km = 5;
  net.links.push_back(l);
  auto g = build_auxiliary_graph(net, wp_default());
  CHECK(g.counts().logical_edges == 0);
}

TEST_CASE("build is deterministic and order independent") {
  Network a = metro_fixture();
  Network b = metro_fixture();
  std::reverse(b.elements.begin(), b.elements.end());
  std::reverse(b.links.begin(), b.links.end());
  std::reverse(b.topologies.begin(), b.topologies.end());
  auto ga = build_auxiliary_graph(a, wp_default());
  auto gb = build_auxiliary_graph(b, wp_default());
  CHECK(ga.serialize_string() == gb.serialize_string());
  CHECK(ga.state_hash() == gb.state_hash());
}

TEST_CASE("structural invariants hold by full scan") {
  for (auto& net :
       {metro_fixture(), sdh_over_otn_fixture(), trace_fixture()}) {
    auto g = build_auxiliary_graph(net, wp_default());
    CHECK_NOTHROW(g.check_consistency());
    for (const auto& e : g.edges) {
      if (e.kind == EdgeKind::ADAPTATION)
        CHECK(g.nodes[e.a].ne_id == g.nodes[e.b].ne_id);
      if (e.kind == EdgeKind::PHYSICAL || e.kind == EdgeKind::LOGICAL) {
        CHECK(g.nodes[e.a].ne_id != g.nodes[e.b].ne_id);
        CHECK(*g.nodes[e.a].tl == *g.nodes[e.b].tl);
      }
    }
  }
}

TEST_CASE("1+1 members become self-protected edges") {
  Network net;
  for (const char* id : {"a", "b"}) {
    NetworkElement ne;
    ne.id = id;
    ne.supported = {kSdhVc4};
    net.elements.push_back(ne);
  }
  LinkSpec l;
  l.id = "p";
  l.ne_a = "a";
  l.tl_a = kSdhVc4;
  l.ne_b = "b";
  l.tl_b = kSdhVc4;
  l.rate = LayerRate::STM64;
  l.self_protected = true;
  net.links = {l};
  net.topologies = {{"lin", TopologyKind::LINEAR_1P1, {"p"}, {}}};
  auto g = build_auxiliary_graph(net, wp_default());
  CHECK(g.edges[g.find_edge("p")].self_protected);
  CHECK(g.counts().special_edges == 0);
}

TEST_CASE("topology file round trip preserves the build") {
  const Network net = metro_fixture();
  std::ostringstream os;
  write_network(net, os);
  std::istringstream is(os.str());
  const Network back = read_network(is);
  auto g1 = build_auxiliary_graph(net, wp_default());
  auto g2 = build_auxiliary_graph(back, wp_default());
  CHECK(g1.serialize_string() == g2.serialize_string());
  // and the text form itself is stable
  std::ostringstream os2;
  write_network(back, os2);
  CHECK(os.str() == os2.str());
}

}  // TEST_SUITE
