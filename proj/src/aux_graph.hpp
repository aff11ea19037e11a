#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "model.hpp"

namespace mlpce {

using NodeIdx = std::uint32_t;
using EdgeIdx = std::uint32_t;
inline constexpr NodeIdx kNoNode = std::numeric_limits<NodeIdx>::max();
inline constexpr EdgeIdx kNoEdge = std::numeric_limits<EdgeIdx>::max();

enum class NodeKind : std::uint8_t { TECH_LAYER, HUB };
enum class EdgeKind : std::uint8_t {
  PHYSICAL, LOGICAL, ADAPTATION, RING_SPECIAL, DH_SPECIAL, DH_HUB_LEG
};

std::string_view edge_kind_name(EdgeKind k);

struct AuxNode {
  NodeIdx idx = kNoNode;
  std::string id;           // "<ne>#<tech>#<layer>" or "hub#<topology>"
  NodeKind kind = NodeKind::TECH_LAYER;
  std::string ne_id;        // empty for hubs
  std::optional<TechLayer> tl;
  std::string topology_id;  // hubs only
};

struct AuxEdge {
  EdgeIdx idx = kNoEdge;
  std::string id;
  NodeIdx a = kNoNode;
  NodeIdx b = kNoNode;
  EdgeKind kind = EdgeKind::PHYSICAL;
  double distance_km = 0.0;
  std::optional<CapacityPool> pool;  // absent for adaptation edges
  bool self_protected = false;
  std::string topology_id;
  std::vector<std::string> srlg_ids;   // sorted
  std::vector<EdgeIdx> underlying;     // LOGICAL / RING_SPECIAL / DH_SPECIAL
  double weight_initial = 0.0;
  double weight_dynamic = 0.0;
  bool active = true;
  bool created = false;                // logical link created at provisioning
  NodeIdx client_node = kNoNode;       // ADAPTATION: the client-layer endpoint
  std::optional<LayerRate> native_rate;  // link rate / bearer container rate

  NodeIdx other(NodeIdx n) const { return n == a ? b : a; }
  bool carries_capacity() const { return pool.has_value(); }
  // Ring special edges and 1+1 links carry the self-protected flag; dual
  // homing hub routes provide working and protection via expansion and count
  // as internally protected for segmentation even though the flag stays off.
  bool internally_protected() const {
    return self_protected || kind == EdgeKind::DH_SPECIAL ||
           kind == EdgeKind::DH_HUB_LEG;
  }
  double utilization() const { return pool ? pool->utilization() : 0.0; }
};

struct TopologyInfo {
  Topology topo;
  TechLayer tl{};                       // operating layer of the member links
  std::vector<EdgeIdx> member_edges;    // cycle/chain order
  std::vector<std::string> member_nes;  // node walk matching member_edges
                                        // rings: member_nes[i] -- member_nes[i+1 mod n]
                                        // chains: aggregates at both ends
  NodeIdx hub = kNoNode;                // dual homing only
};

struct GraphCounts {
  std::size_t tech_layer_nodes = 0;
  std::size_t hub_nodes = 0;
  std::size_t adaptation_edges = 0;
  std::size_t physical_edges = 0;
  std::size_t logical_edges = 0;
  std::size_t special_edges = 0;  // ring + dh member legs + hub legs
  std::size_t total_edges = 0;
};

class AuxGraph {
 public:
  std::vector<AuxNode> nodes;
  std::vector<AuxEdge> edges;
  std::unordered_map<std::string, NodeIdx> node_ids;
  std::unordered_map<std::string, EdgeIdx> edge_ids;
  std::vector<std::vector<EdgeIdx>> adjacency;  // per node, sorted by edge id
  std::map<std::string, TopologyInfo> topologies;
  std::map<std::string, std::vector<EdgeIdx>> srlg_edges;
  std::uint64_t logical_seq = 0;  // counter for provisioning-created links

  NodeIdx add_node(AuxNode n);
  EdgeIdx add_edge(AuxEdge e);
  void remove_last_edge();  // provisioning rollback of a created edge

  NodeIdx find_node(const std::string& id) const;
  EdgeIdx find_edge(const std::string& id) const;
  NodeIdx tech_layer_node(const std::string& ne, TechLayer tl) const;
  const AuxNode& node(NodeIdx i) const { return nodes[i]; }
  const AuxEdge& edge(EdgeIdx i) const { return edges[i]; }
  AuxEdge& edge(EdgeIdx i) { return edges[i]; }

  GraphCounts counts() const;
  void check_consistency() const;  // throws on broken invariants
  void serialize(std::ostream& os) const;
  std::string serialize_string() const;
  std::uint64_t state_hash() const;
};

std::string tech_layer_node_id(const std::string& ne, TechLayer tl);
std::string hub_node_id(const std::string& topology_id);

}  // namespace mlpce
