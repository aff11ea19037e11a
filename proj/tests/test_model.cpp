#include "doctest.h"
#include "model.hpp"
#include "rng.hpp"

using namespace mlpce;

TEST_SUITE("model") {

TEST_CASE("taxonomy accepts exactly the known pairs") {
  const Technology techs[] = {Technology::PDH, Technology::SDH,
                              Technology::OTN, Technology::WDM,
                              Technology::ETH, Technology::MPLS_TP};
  const Layer layers[] = {Layer::SERVICE, Layer::VC4, Layer::ODU, Layer::OTU,
                          Layer::OCH,     Layer::LINK, Layer::TUNNEL};
  int valid = 0;
  for (auto t : techs)
    for (auto l : layers) {
      const TechLayer tl{t, l};
      if (tech_layer_valid(tl)) {
        ++valid;
        CHECK_NOTHROW(require_tech_layer(tl));
      } else {
        CHECK_THROWS_AS(require_tech_layer(tl), ValidationError);
      }
    }
  CHECK(valid == 9);
  CHECK(parse_tech_layer("sdh:vc4") == kSdhVc4);
  CHECK_THROWS_AS(parse_tech_layer("sdh:tunnel"), ValidationError);
  CHECK(is_service_layer(kEthService));
  CHECK_FALSE(is_service_layer(kMplsTunnel));
}

TEST_CASE("rate table") {
  CHECK(rate_mbps(LayerRate::VC12) == Mbps(2));
  CHECK(rate_mbps(LayerRate::VC3) == Mbps(45));
  CHECK(rate_mbps(LayerRate::VC12) < rate_mbps(LayerRate::VC3));
  CHECK(rate_mbps(LayerRate::VC3) < rate_mbps(LayerRate::VC4));
  CHECK(demanded_mbps(LayerRate::ETH_BW, Mbps(37)) == Mbps(37));
  CHECK_THROWS_AS(demanded_mbps(LayerRate::ETH_BW, Mbps(0)), ValidationError);
  CHECK(service_layer_for(LayerRate::VC12) == kSdhService);
  CHECK(service_layer_for(LayerRate::ETH_BW) == kEthService);
}

TEST_CASE("capacity feasibility gates on containers") {
  CapacityPool p;
  p.max_mbps = Mbps(150);
  p.available_mbps = Mbps(100);
  p.containers[LayerRate::VC3] = 0;
  // room for 45 Mbps but no whole vc3 container
  CHECK_FALSE(p.feasible(LayerRate::VC3));

  CapacityPool empty;
  empty.max_mbps = Mbps(150);
  empty.available_mbps = Mbps(0);
  empty.containers[LayerRate::VC12] = 63;
  CHECK_FALSE(empty.feasible(LayerRate::VC12));
  CHECK_FALSE(empty.feasible(LayerRate::ETH_BW, Mbps(1)));

  CapacityPool ok;
  ok.max_mbps = Mbps(150);
  ok.available_mbps = Mbps(100);
  ok.containers[LayerRate::VC12] = 63;
  CHECK(ok.feasible(LayerRate::VC12));
}

TEST_CASE("consume and restore are exact inverses") {
  CapacityPool p;
  p.max_mbps = Mbps(10);
  p.available_mbps = Mbps(10);
  p.containers[LayerRate::VC12] = 2;
  const CapacityPool orig = p;

  p.consume(LayerRate::VC12);
  CHECK(p.available_mbps == Mbps(8));
  CHECK(p.containers[LayerRate::VC12] == 1);
  p.restore(LayerRate::VC12);
  CHECK(p == orig);

  CapacityPool tiny;
  tiny.max_mbps = Mbps(1);
  tiny.available_mbps = Mbps(1);
  tiny.containers[LayerRate::VC12] = 1;
  CHECK_THROWS_AS(tiny.consume(LayerRate::VC12), CapacityError);
  CHECK_THROWS_AS(p.restore(LayerRate::VC12), ValidationError);
}

TEST_CASE("lifo consume/restore fuzz returns pools bit-exactly") {
  RandomSource rng(2024);
  for (int it = 0; it < 10000; ++it) {
    CapacityPool p = CapacityPool::for_link(LayerRate::STM16);
    const CapacityPool orig = p;
    std::vector<std::pair<LayerRate, Mbps>> ops;
    const int n = static_cast<int>(rng.uniform_u64(1, 6));
    for (int i = 0; i < n; ++i) {
      static const LayerRate rates[] = {LayerRate::VC12, LayerRate::VC3,
                                        LayerRate::VC4, LayerRate::ETH_BW};
      const LayerRate r = rates[rng.uniform_u64(0, 3)];
      const Mbps cap =
          r == LayerRate::ETH_BW ? Mbps(rng.uniform_int(1, 300)) : Mbps(0);
      if (!p.feasible(r, cap)) continue;
      p.consume(r, cap);
      ops.push_back({r, cap});
    }
    for (auto it2 = ops.rbegin(); it2 != ops.rend(); ++it2)
      p.restore(it2->first, it2->second);
    REQUIRE(p == orig);
  }
}

TEST_CASE("eth_bw feasibility is monotone in requested capacity") {
  RandomSource rng(7);
  for (int it = 0; it < 2000; ++it) {
    CapacityPool p = CapacityPool::for_link(LayerRate::GE);
    p.available_mbps = Mbps(rng.uniform_int(0, 1000));
    const Mbps c1{rng.uniform_int(1, 1000)};
    const Mbps c2{rng.uniform_int(1, 1000)};
    const Mbps lo = std::min(c1, c2), hi = std::max(c1, c2);
    if (p.feasible(LayerRate::ETH_BW, hi))
      CHECK(p.feasible(LayerRate::ETH_BW, lo));
  }
}

TEST_CASE("container seeding follows the multiplex numbers") {
  const auto p = CapacityPool::for_link(LayerRate::STM64);
  CHECK(p.containers.at(LayerRate::VC4) == 64);
  CHECK(p.containers.at(LayerRate::VC3) == 192);
  CHECK(p.containers.at(LayerRate::VC12) == 4032);
  const auto w = CapacityPool::for_link(LayerRate::OCH, 80);
  CHECK(w.max_mbps == Mbps(800000));
  CHECK(w.containers.at(LayerRate::ODU2) == 80);
}

TEST_CASE("element validation") {
  Network net;
  NetworkElement ne;
  ne.id = "x";
  ne.supported = {kSdhService};
  ne.adaptations = {{kSdhService, kSdhVc4}};  // vc4 not supported
  net.elements = {ne};
  CHECK_THROWS_AS(net.validate(), ValidationError);
}

TEST_CASE("topology shape validation") {
  auto mk_net = [] {
    Network net;
    for (const char* id : {"a", "b", "c", "d"}) {
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
    net.links = {link("ab", "a", "b"), link("bc", "b", "c"),
                 link("cd", "c", "d"), link("da", "d", "a"),
                 link("ac", "a", "c")};
    return net;
  };

  SUBCASE("ring must close") {
    Network net = mk_net();
    net.topologies = {{"r", TopologyKind::CORE_RING, {"ab", "bc", "cd"}, {}}};
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("valid core ring, no aggregate allowed") {
    Network net = mk_net();
    net.topologies = {
        {"r", TopologyKind::CORE_RING, {"ab", "bc", "cd", "da"}, {}}};
    CHECK_NOTHROW(net.validate());
    net.topologies[0].aggregates = {"a"};
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("agg ring needs exactly one member aggregate") {
    Network net = mk_net();
    net.topologies = {
        {"r", TopologyKind::RING_WITH_AGG, {"ab", "bc", "cd", "da"}, {}}};
    CHECK_THROWS_AS(net.validate(), ValidationError);
    net.topologies[0].aggregates = {"a"};
    CHECK_NOTHROW(net.validate());
  }
  SUBCASE("dual homing is a chain between its two aggregates") {
    Network net = mk_net();
    net.topologies = {
        {"d", TopologyKind::DUAL_HOMING, {"ab", "bc"}, {"a", "c"}}};
    CHECK_NOTHROW(net.validate());
    net.topologies[0].aggregates = {"a", "d"};
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
  SUBCASE("dangling topology member") {
    Network net = mk_net();
    net.topologies = {{"r", TopologyKind::MESH, {"zz"}, {}}};
    CHECK_THROWS_AS(net.validate(), ValidationError);
  }
}

TEST_CASE("srlg registry derives from link tags") {
  Network net;
  for (const char* id : {"a", "b", "c"}) {
    NetworkElement ne;
    ne.id = id;
    ne.supported = {kSdhVc4};
    net.elements.push_back(ne);
  }
  LinkSpec l1;
  l1.id = "l1";
  l1.ne_a = "a";
  l1.tl_a = kSdhVc4;
  l1.ne_b = "b";
  l1.tl_b = kSdhVc4;
  l1.rate = LayerRate::STM16;
  l1.srlg_ids = {"g1"};
  LinkSpec l2 = l1;
  l2.id = "l2";
  l2.ne_a = "b";
  l2.ne_b = "c";
  l2.srlg_ids = {"g1", "g2"};
  net.links = {l1, l2};
  const auto srlgs = net.srlgs();
  REQUIRE(srlgs.size() == 2);
  CHECK(srlgs[0].id == "g1");
  CHECK(srlgs[0].member_edges == std::vector<std::string>{"l1", "l2"});
  CHECK(srlgs[1].member_edges == std::vector<std::string>{"l2"});
}

}  // TEST_SUITE
