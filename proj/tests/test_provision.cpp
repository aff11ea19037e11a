#include "doctest.h"
#include "netgen.hpp"
#include "sim.hpp"
#include "support/fixtures.hpp"

using namespace mlpce;
using namespace mlpce::testing;

namespace {

struct Env {
  AuxGraph g;
  WeightParams wp;
};

Env make(const Network& net) {
  Env e;
  e.g = build_auxiliary_graph(net, e.wp);
  derive_normalizers(e.g, e.wp);
  return e;
}

ServiceRequest vc12(const std::string& id, const std::string& src,
                    const std::string& dst) {
  ServiceRequest r;
  r.id = id;
  r.src_ne = src;
  r.dst_ne = dst;
  r.rate = LayerRate::VC12;
  r.path_type = PathType::UNPROTECTED;
  return r;
}

}  // namespace

TEST_SUITE("provision") {

TEST_CASE("saturated link rejects the request before search") {
  Network net;
  NetworkElement a;
  a.id = "a";
  a.location = "m";
  a.supported = {kSdhService, kSdhVc4};
  a.adaptations = {{kSdhService, kSdhVc4}};
  NetworkElement b = a;
  b.id = "b";
  net.elements = {a, b};
  LinkSpec l;
  l.id = "ab";
  l.ne_a = "a";
  l.tl_a = kSdhVc4;
  l.ne_b = "b";
  l.tl_b = kSdhVc4;
  l.rate = LayerRate::STM1;
  l.distance_km = 1;
  net.links = {l};
  auto env = make(net);
  Provisioner prov(env.g, env.wp);
  env.g.edges[env.g.find_edge("ab")].pool->available_mbps = Mbps(1);

  const auto h = env.g.state_hash();
  auto res = prov.find_path(vc12("r", "a", "b"));
  CHECK_FALSE(res.accepted);
  CHECK(res.status == ProvisionStatus::REJECTED_NO_PATH);
  CHECK(env.g.state_hash() == h);
}

TEST_CASE("vc12 over an otn chain rides a created vc4 bearer") {
  auto env = make(sdh_over_otn_fixture());
  Provisioner prov(env.g, env.wp);
  auto res = prov.find_path(vc12("r1", "nea", "nec"));
  REQUIRE(res.accepted);
  REQUIRE(res.created_logical_links.size() == 1);
  const EdgeIdx log = env.g.find_edge(res.created_logical_links[0]);
  REQUIRE(log != kNoEdge);
  const AuxEdge& e = env.g.edges[log];
  CHECK(e.kind == EdgeKind::LOGICAL);
  CHECK(e.created);
  CHECK(e.pool->max_mbps == Mbps(150));
  CHECK(e.pool->available_mbps == Mbps(148));  // the 2 Mbps service
  CHECK(e.pool->containers.at(LayerRate::VC12) == 62);
  // the bearer took a whole vc4 from each otn hop
  for (const char* id : {"ab", "bc"}) {
    const auto& pool = *env.g.edges[env.g.find_edge(id)].pool;
    CHECK(pool.available_mbps == Mbps(0));
    CHECK(pool.containers.at(LayerRate::VC4) == 0);
  }
  verify_conservation(env.g, prov.ledger());

  SUBCASE("the bearer is reused and cost does not regress") {
    auto probe1 = prov.find_path(vc12("p1", "nea", "nec"), false);
    REQUIRE(probe1.status == ProvisionStatus::CANDIDATES_ONLY);
    auto res2 = prov.find_path(vc12("r2", "nea", "nec"));
    REQUIRE(res2.accepted);
    CHECK(res2.created_logical_links.empty());
    CHECK(res2.paths[0].cost <= res.paths[0].cost + 1e-9);
  }

  SUBCASE("containers gate acceptance, 63 services per bearer") {
    int accepted = 1;  // r1 above
    for (int i = 0; i < 80; ++i) {
      auto r = prov.find_path(vc12("rr" + std::to_string(i), "nea", "nec"));
      if (!r.accepted) break;
      ++accepted;
    }
    CHECK(accepted == 63);
    verify_conservation(env.g, prov.ledger());
    auto last = prov.find_path(vc12("last", "nea", "nec"));
    CHECK_FALSE(last.accepted);
  }
}

TEST_CASE("paths without adaptation create nothing") {
  Network net;
  for (const char* id : {"a", "b"}) {
    NetworkElement ne;
    ne.id = id;
    ne.location = "m";
    ne.supported = {kSdhService, kSdhVc4};
    ne.adaptations = {{kSdhService, kSdhVc4}};
    net.elements.push_back(ne);
  }
  LinkSpec l;
  l.id = "ab";
  l.ne_a = "a";
  l.tl_a = kSdhVc4;
  l.ne_b = "b";
  l.tl_b = kSdhVc4;
  l.rate = LayerRate::STM16;
  l.distance_km = 1;
  net.links = {l};
  auto env = make(net);
  Provisioner prov(env.g, env.wp);
  // service adaptation pops at the service layer: no logical link
  auto res = prov.find_path(vc12("r", "a", "b"));
  REQUIRE(res.accepted);
  CHECK(res.created_logical_links.empty());
  CHECK(count_created_logical(env.g) == 0);
}

TEST_CASE("candidate listing with n > 1 never mutates state") {
  auto env = make(sdh_over_otn_fixture());
  Provisioner prov(env.g, env.wp);
  const auto h = env.g.state_hash();
  auto r = vc12("r", "nea", "nec");
  r.n = 3;
  auto res = prov.find_path(r);
  CHECK(res.status == ProvisionStatus::CANDIDATES_ONLY);
  CHECK_FALSE(res.accepted);
  CHECK_FALSE(res.paths.empty());
  CHECK(res.created_logical_links.empty());
  CHECK(env.g.state_hash() == h);
}

TEST_CASE("capacity rollback leaves the graph bit-identical") {
  auto env = make(sdh_over_otn_fixture());
  // starve the second hop so bearer creation fails mid-commit
  env.g.edges[env.g.find_edge("bc")].pool->available_mbps = Mbps(100);
  env.g.edges[env.g.find_edge("bc")].pool->containers[LayerRate::VC4] = 0;
  Provisioner prov(env.g, env.wp);
  // keep the step-1 filter from hiding the weak hop: ask for 2 Mbps which
  // fits, the failure only shows when the vc4 bearer is carved
  const auto h = env.g.state_hash();
  auto res = prov.find_path(vc12("r", "nea", "nec"));
  CHECK_FALSE(res.accepted);
  CHECK(res.status == ProvisionStatus::REJECTED_CAPACITY);
  CHECK(env.g.state_hash() == h);
  CHECK(prov.ledger().empty());
  CHECK_FALSE(res.reject_reason.empty());
}

TEST_CASE("lpp provisioning charges both arcs of a ring") {
  auto env = make(metro_fixture());
  Provisioner prov(env.g, env.wp);
  ServiceRequest r = vc12("r", "f", "g");
  r.path_type = PathType::LPP;
  auto res = prov.find_path(r);
  REQUIRE(res.accepted);
  // the working path stays inside the aggregate ring; with member links out
  // of view it crosses two special edges (f->b, g->b), each charging its
  // whole cycle, so every ring link carries the demand
  for (const char* id : {"bf", "fg", "gh", "hb"}) {
    const auto& pool = *env.g.edges[env.g.find_edge(id)].pool;
    CHECK(pool.max_mbps - pool.available_mbps >= Mbps(2));
  }
  verify_conservation(env.g, prov.ledger());
}

TEST_CASE("unprotected traffic over a dual-homing route charges one arc") {
  auto env = make(metro_fixture());
  Provisioner prov(env.g, env.wp);
  // remove plain chain links so the hub route is the only option
  ServiceRequest r = vc12("r", "k", "c");
  r.path_type = PathType::UNPROTECTED;
  ScopedRemoval rem(env.g);
  rem.remove(env.g.find_edge("ck"));
  auto res = prov.find_path(r);
  REQUIRE(res.accepted);
  bool via_hub = false;
  for (EdgeIdx e : res.paths[0].edges)
    via_hub |= env.g.edges[e].kind == EdgeKind::DH_SPECIAL;
  REQUIRE(via_hub);
  // exit aggregate is c, so only the k..c arc carries the traffic
  auto consumed = [&](const char* id) {
    const auto& pool = *env.g.edges[env.g.find_edge(id)].pool;
    return pool.max_mbps - pool.available_mbps;
  };
  CHECK(consumed("ck") == Mbps(2));
  CHECK(consumed("kl") == Mbps(0));
  CHECK(consumed("ld") == Mbps(0));
  verify_conservation(env.g, prov.ledger());
}

TEST_CASE("random nets: conservation and atomicity under load") {
  RandomSource rng(909);
  for (int it = 0; it < 8; ++it) {
    GenParams p;
    p.locations = 1;
    p.agg_ring_pairs = 1;
    p.access_rings = 2;
    p.agg_dh_pairs = 1;
    p.access_dh_per_span = 1;
    p.random_agg_ring_pairs = 0;
    p.linear_chain_pairs = 2;
    p.eth_ring_sizes = {4};
    p.eth_dh_rings = 1;
    p.eth_core_ring_nodes = 3;
    auto net = generate(p, 3000 + it);
    WeightParams wp;
    wp.set_alpha(0.4);
    auto g = build_auxiliary_graph(net, wp);
    derive_normalizers(g, wp);
    Provisioner prov(g, wp);
    auto reqs = generate_requests(net, 40, 4000 + it);
    for (const auto& req : reqs) {
      const auto before = g.state_hash();
      const auto res = prov.find_path(req);
      if (!res.accepted) CHECK(g.state_hash() == before);
      for (const auto& e : g.edges) {
        if (!e.pool) continue;
        CHECK(e.pool->available_mbps >= Mbps(0));
        for (const auto& [rate, n] : e.pool->containers) CHECK(n >= 0);
      }
    }
    verify_conservation(g, prov.ledger());
    CHECK_NOTHROW(g.check_consistency());
  }
}

}  // TEST_SUITE
