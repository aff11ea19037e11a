#pragma once

#include <cstdint>

#include "graph_build.hpp"
#include "rng.hpp"

namespace mlpce::testing {

// Metro fixture: 5-node core ring (a..e), an aggregate ring b,f,g,h with b
// as aggregate, and a dual-homing chain c-k-l-d. All elements carry SDH
// service + vc4; distances are unit unless noted.
Network metro_fixture();

// Three-element SDH-over-OTN chain: A and C terminate services, B switches
// at the ODU layer only. The bearer links hold exactly one vc4 worth of
// capacity so the second bearer creation must fail.
Network sdh_over_otn_fixture();

// Inter-technology trace fixture: two SDH ports patched onto OTN
// transponders joined by a 2-hop ODU chain, plus one dead-end port.
Network trace_fixture();

// Layered random networks for oracle equivalence: a linear adaptation
// hierarchy (service / bearer / transport) keeps the stack at any node a
// function of its layer, so the one-label search is exact and brute force
// comparable. Some links are 1+1 self-protected; optionally every
// capacity edge joins one of a handful of random SRLGs.
struct RandomNet {
  Network net;
  std::string src_ne;
  std::string dst_ne;
};
RandomNet random_layered_net(RandomSource& rng, int max_elements,
                             bool with_srlgs);

struct BuiltFixture {
  AuxGraph graph;
  WeightParams wp;
  NodeIdx src = kNoNode;
  NodeIdx dst = kNoNode;
};
// Builds the graph and resolves the service endpoints of a random net.
BuiltFixture build_random(const RandomNet& rn, std::uint64_t weight_seed);

}  // namespace mlpce::testing
