#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mlpce {

// ---------------------------------------------------------------------------
// Technology / layer taxonomy

enum class Technology : std::uint8_t { PDH, SDH, OTN, WDM, ETH, MPLS_TP };
enum class Layer : std::uint8_t { SERVICE, VC4, ODU, OTU, OCH, LINK, TUNNEL };

struct TechLayer {
  Technology tech{};
  Layer layer{};
  auto operator<=>(const TechLayer&) const = default;
};

inline constexpr TechLayer kSdhService{Technology::SDH, Layer::SERVICE};
inline constexpr TechLayer kSdhVc4{Technology::SDH, Layer::VC4};
inline constexpr TechLayer kEthService{Technology::ETH, Layer::SERVICE};
inline constexpr TechLayer kEthLink{Technology::ETH, Layer::LINK};
inline constexpr TechLayer kOtnOdu{Technology::OTN, Layer::ODU};
inline constexpr TechLayer kOtnOtu{Technology::OTN, Layer::OTU};
inline constexpr TechLayer kWdmOch{Technology::WDM, Layer::OCH};
inline constexpr TechLayer kMplsTunnel{Technology::MPLS_TP, Layer::TUNNEL};
inline constexpr TechLayer kPdhService{Technology::PDH, Layer::SERVICE};

bool tech_layer_valid(TechLayer tl);
void require_tech_layer(TechLayer tl);  // throws ValidationError

inline bool is_service_layer(TechLayer tl) { return tl.layer == Layer::SERVICE; }

std::string_view tech_name(Technology t);
std::string_view layer_name(Layer l);
std::string tl_name(TechLayer tl);  // e.g. "sdh:vc4"
Technology parse_tech(std::string_view s);
Layer parse_layer(std::string_view s);
TechLayer parse_tech_layer(std::string_view s);  // "sdh:vc4"

// ---------------------------------------------------------------------------
// Layer rates

enum class LayerRate : std::uint8_t {
  VC12, VC3, VC4, STM1, STM4, STM16, STM64, GE, TENGE, ETH_BW, ODU2, OTU2, OCH
};

// Nominal rate of the container/line; ETH_BW is a pure bandwidth request and
// reports 0 here (the demand comes from the request's capacity field).
Mbps rate_mbps(LayerRate r);
inline bool is_container_rate(LayerRate r) { return r != LayerRate::ETH_BW; }
Mbps demanded_mbps(LayerRate r, const Mbps& capacity);
TechLayer service_layer_for(LayerRate r);
std::string_view rate_name(LayerRate r);
LayerRate parse_rate(std::string_view s);

// Free single-rate containers carried by one channel of a link of this rate.
std::map<LayerRate, std::int64_t> container_seed(LayerRate link_rate);

// ---------------------------------------------------------------------------
// Capacity accounting

struct CapacityPool {
  Mbps max_mbps{0};
  Mbps available_mbps{0};
  std::map<LayerRate, std::int64_t> containers;

  static CapacityPool for_link(LayerRate rate, int channels = 1);

  bool feasible(LayerRate rate, const Mbps& capacity = Mbps(0)) const;
  void consume(LayerRate rate, const Mbps& capacity = Mbps(0));
  void restore(LayerRate rate, const Mbps& capacity = Mbps(0));
  double utilization() const;
  void validate() const;

  bool operator==(const CapacityPool&) const = default;
};

// ---------------------------------------------------------------------------
// Network description (input to the graph builder)

struct NetworkElement {
  std::string id;
  std::string location;
  std::vector<TechLayer> supported;                       // sorted, unique
  std::vector<std::pair<TechLayer, TechLayer>> adaptations;  // (client, server)

  bool supports(TechLayer tl) const;
};

struct LinkSpec {
  std::string id;
  std::string ne_a;
  TechLayer tl_a{};
  std::string ne_b;
  TechLayer tl_b{};
  LayerRate rate{LayerRate::GE};
  int channels = 1;
  double distance_km = 0.0;
  bool self_protected = false;
  std::vector<std::string> srlg_ids;  // sorted
  // Inter-technology links only: which end is the client port and the rate of
  // the client-layer bearer established by a successful trace.
  std::optional<char> client_end;          // 'a' or 'b'
  std::optional<LayerRate> client_rate;

  bool inter_tech() const { return !(tl_a == tl_b); }
};

enum class TopologyKind : std::uint8_t {
  CORE_RING, RING_WITH_AGG, DUAL_HOMING, MESH, LINEAR_1P1
};

std::string_view topology_kind_name(TopologyKind k);
TopologyKind parse_topology_kind(std::string_view s);

struct Topology {
  std::string id;
  TopologyKind kind{TopologyKind::MESH};
  std::vector<std::string> member_links;  // ordered (cycle / chain order)
  std::vector<std::string> aggregates;    // 0, 1 or 2 NE ids per kind
};

struct Srlg {
  std::string id;
  std::vector<std::string> member_edges;
};

struct Network {
  std::vector<NetworkElement> elements;  // sorted by id
  std::vector<LinkSpec> links;           // sorted by id
  std::vector<Topology> topologies;      // sorted by id

  const NetworkElement* find_element(const std::string& id) const;
  const LinkSpec* find_link(const std::string& id) const;
  std::vector<Srlg> srlgs() const;  // derived from link tags, sorted

  void canonicalize();  // sort collections, dedupe srlg tags
  void validate() const;
};

}  // namespace mlpce
