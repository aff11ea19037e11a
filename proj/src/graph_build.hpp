#pragma once

#include "aux_graph.hpp"
#include "weights.hpp"

namespace mlpce {

// Construct the full auxiliary graph: one node per supported (element,
// technology, layer), adaptation edges, physical links, logical links traced
// across inter-technology links, and topology special edges. Initial weights
// are assigned from the given parameters (normalizers derived when unset).
AuxGraph build_auxiliary_graph(const Network& net, const WeightParams& wp);

// Step 4: follow each inter-technology link's server-layer chain and emit one
// logical edge per matched client-port pair. Exposed for targeted tests.
void trace_logical_links(AuxGraph& g, const std::vector<LinkSpec>& inter_tech);

// Step 5: special edges for one topology (ring mesh/legs, dual-homing hub).
void add_topology_edges(AuxGraph& g, const std::string& topology_id);

}  // namespace mlpce
