#pragma once

#include <optional>
#include <vector>

#include "aux_graph.hpp"
#include "weights.hpp"

namespace mlpce {

using AdaptStack = std::vector<TechLayer>;

// Costs are compared with a small absolute epsilon so that mathematically
// equal sums accumulated in different orders still tie; ties then fall to
// hop count and the lexicographic edge-id sequence.
inline constexpr double kCostEps = 1e-12;
inline bool cost_less(double a, double b) { return a < b - kCostEps; }
inline bool cost_eq(double a, double b) { return !cost_less(a, b) && !cost_less(b, a); }

struct PathResult {
  NodeIdx src = kNoNode;
  NodeIdx dst = kNoNode;
  std::vector<EdgeIdx> edges;
  double cost = 0.0;

  std::size_t hops() const { return edges.size(); }
  std::vector<NodeIdx> nodes_along(const AuxGraph& g) const;
};

// Lexicographic edge-id comparison used as the final tie rule.
bool edge_seq_less(const AuxGraph& g, const std::vector<EdgeIdx>& a,
                   const std::vector<EdgeIdx>& b);
// Full deterministic path order: cost (eps), hops, edge-id sequence.
bool path_order_less(const AuxGraph& g, const PathResult& a, const PathResult& b);

struct ProtectionSegment {
  NodeIdx seg_src = kNoNode;
  NodeIdx seg_dst = kNoNode;
  std::size_t first_pos = 0;  // span within the working path
  std::size_t last_pos = 0;
  PathResult path;
};

struct ProtectedPath {
  PathResult working;
  std::vector<ProtectionSegment> protection;
  double combined_cost = 0.0;
};

struct SearchOptions {
  AdaptStack initial_stack;
  EdgeIdx entry_edge = kNoEdge;  // edge used to arrive at src (spur context)
  int max_stack_depth = 8;
};

// Marks edges inactive and restores them on scope exit, whatever happens.
class ScopedRemoval {
 public:
  explicit ScopedRemoval(AuxGraph& g) : g_(g) {}
  ScopedRemoval(const ScopedRemoval&) = delete;
  ScopedRemoval& operator=(const ScopedRemoval&) = delete;
  ~ScopedRemoval() {
    for (auto it = removed_.rbegin(); it != removed_.rend(); ++it)
      g_.edges[*it].active = true;
  }
  void remove(EdgeIdx e) {
    if (g_.edges[e].active) {
      g_.edges[e].active = false;
      removed_.push_back(e);
    }
  }
  void remove_incident(NodeIdx n) {
    for (EdgeIdx e : g_.adjacency[n]) remove(e);
  }

 private:
  AuxGraph& g_;
  std::vector<EdgeIdx> removed_;
};

// Adaptation-edge gate: non-adaptation edges pass with the stack unchanged;
// adaptation edges push on the way into a server layer and pop only when the
// stack top matches the client layer being re-entered.
std::optional<AdaptStack> explore_edge(const AuxGraph& g, EdgeIdx e,
                                       NodeIdx from, const AdaptStack& stack,
                                       int max_stack_depth = 8);

// Hub nodes may only be crossed pairing one member spoke with one aggregate
// leg; zero-weight legs would otherwise tunnel between the two aggregates.
bool hub_transition_ok(const AuxGraph& g, NodeIdx at, EdgeIdx prev, EdgeIdx next);

// Replays a path edge by edge. Returns the final stack, or nullopt when the
// path is disconnected, revisits a node, breaks the hub rule or is rejected
// by explore_edge.
std::optional<AdaptStack> replay_path(const AuxGraph& g, NodeIdx src,
                                      const std::vector<EdgeIdx>& edges,
                                      const AdaptStack& initial = {},
                                      int max_stack_depth = 8);

// One (cost, stack) label per node; destination labels are only admitted
// with an empty stack so the returned path is end-to-end balanced.
std::optional<PathResult> dijkstra_shortest_path(AuxGraph& g, NodeIdx src,
                                                 NodeIdx dst,
                                                 const WeightFn& wf,
                                                 const SearchOptions& opts = {});

// Yen's loopless K-shortest paths over the gated Dijkstra.
std::vector<PathResult> yen_k_shortest(AuxGraph& g, NodeIdx src, NodeIdx dst,
                                       std::size_t k, const WeightFn& wf,
                                       const SearchOptions& opts = {});

// Self-protected edges are hidden for the search and restored on exit.
std::vector<PathResult> find_unprotected_path(AuxGraph& g, NodeIdx src,
                                              NodeIdx dst, std::size_t n,
                                              const WeightFn& wf,
                                              const SearchOptions& opts = {});

struct Segment {
  NodeIdx src = kNoNode;
  NodeIdx dst = kNoNode;
  std::size_t first_pos = 0;
  std::size_t last_pos = 0;
  std::vector<EdgeIdx> edges;  // includes adaptation edges attached forward
  bool internally_protected = false;
};

// Maximal runs of internally-protected vs unprotected capacity edges.
// Adaptation pops join the preceding run, pushes the following run, so every
// segment is stack-balanced between its boundary nodes.
std::vector<Segment> split_segments(const AuxGraph& g, const PathResult& path);

// Link- and SRLG-disjoint path pairs, best first.
std::vector<ProtectedPath> find_lpp(AuxGraph& g, NodeIdx src, NodeIdx dst,
                                    std::size_t n, const WeightFn& wf,
                                    const SearchOptions& opts = {});

struct ExpandedArcs {
  std::vector<EdgeIdx> working;
  std::vector<EdgeIdx> protection;
};

// Concrete member-link arcs behind a special edge. Ring edges expand between
// their endpoints; dual-homing spokes expand from the member to the two
// aggregates, working side chosen by exit aggregate when the path fixes it,
// otherwise by cheaper arc.
ExpandedArcs expand_special_edge(const AuxGraph& g, EdgeIdx special,
                                 const std::string& exit_aggregate = "");

}  // namespace mlpce
