#pragma once

#include <string>
#include <vector>

#include "path_engine.hpp"

namespace mlpce {

enum class PathType : std::uint8_t { UNPROTECTED, LPP };

std::string_view path_type_name(PathType t);
PathType parse_path_type(std::string_view s);

struct ServiceRequest {
  std::string id;
  std::string src_ne;
  std::string dst_ne;
  PathType path_type = PathType::LPP;
  int n = 1;
  LayerRate rate = LayerRate::VC12;
  Mbps capacity_mbps{0};  // eth_bw only
};

enum class ProvisionStatus : std::uint8_t {
  ACCEPTED,          // path found and capacity committed
  CANDIDATES_ONLY,   // n > 1: paths returned, selection externalized
  REJECTED_NO_PATH,
  REJECTED_CAPACITY  // a rollback happened while committing
};

struct ProvisioningResult {
  std::string request_id;
  bool accepted = false;
  ProvisionStatus status = ProvisionStatus::REJECTED_NO_PATH;
  std::vector<PathResult> paths;                 // unprotected candidates
  std::vector<ProtectedPath> protected_paths;    // lpp candidates
  std::vector<std::string> created_logical_links;
  Mbps provisioned_mbps_total{0};
  std::string reject_reason;  // REJECTED_CAPACITY only
};

// One committed pool mutation; the full ledger replays to (max - available)
// for every pool, which the invariant tests assert.
struct LedgerEntry {
  std::string edge_id;
  LayerRate rate;
  Mbps amount;          // demanded megabits actually subtracted
  bool container;       // true when charged for a logical-link bearer
  std::string request_id;
};

class Provisioner {
 public:
  Provisioner(AuxGraph& g, const WeightParams& wp);

  // Algorithm entry point: capacity filter, path computation, and for n == 1
  // logical-link creation plus capacity commit (atomic; failures roll back).
  ProvisioningResult find_path(const ServiceRequest& req,
                               bool provision = true);

  // Procedure run while committing a chosen path; exposed for tests.
  // Returns created edge indices and fills `cover` (per-position covering
  // logical link) for the request charge that follows.
  std::vector<EdgeIdx> check_and_create_logical_links(
      const PathResult& path, std::vector<EdgeIdx>& cover,
      const std::string& request_id);

  const std::vector<LedgerEntry>& ledger() const { return ledger_; }
  const WeightParams& weight_params() const { return wp_; }
  AuxGraph& graph() { return g_; }

 private:
  struct Journal;
  std::vector<EdgeIdx> create_logical_links(const PathResult& path,
                                            std::vector<EdgeIdx>& cover,
                                            Journal& j);
  void charge_span(const PathResult& path, const std::vector<NodeIdx>& nodes,
                   const std::vector<EdgeIdx>& cover, std::size_t from,
                   std::size_t to, LayerRate rate, const Mbps& cap,
                   bool both_arcs, bool bearer, Journal& j);
  void charge_edge_deep(EdgeIdx e, LayerRate rate, const Mbps& cap,
                        bool both_arcs, bool bearer, const std::string& exit_agg,
                        Journal& j);
  void consume_on(EdgeIdx e, LayerRate rate, const Mbps& cap, bool bearer,
                  Journal& j);
  LayerRate container_rate_for(const PathResult& path, std::size_t push_pos,
                               std::size_t pop_pos, TechLayer popped) const;
  void rollback(Journal& j);
  void commit(Journal& j);

  AuxGraph& g_;
  WeightParams wp_;
  std::vector<LedgerEntry> ledger_;
  std::string active_request_;
  Mbps active_demand_{0};
};

// Ledger replay: asserts max - available == sum of committed charges for
// every pool in the graph. Throws on mismatch.
void verify_conservation(const AuxGraph& g,
                         const std::vector<LedgerEntry>& ledger);

}  // namespace mlpce
