#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graph_build.hpp"
#include "topo_io.hpp"

namespace mlpce {

struct RunMetrics {
  Mbps r_mbps{0};         // accepted demand, weighted by bandwidth
  Mbps b_mbps{0};         // capacity consumed on physical + logical pools
  std::int64_t l_count = 0;      // logical links created
  std::int64_t u_weighted = 0;   // weighted link utilization
  double val = 0.0;              // combined score, filled by compute_vals
  bool excluded = false;         // no accepted request: out of the average
  double avg_ms_unprot = 0.0;
  double avg_ms_lpp = 0.0;
  int accepted = 0;
  int rejected = 0;
};

struct SweepCell {
  Scheme scheme = Scheme::PLF;
  double alpha = 0.5;
  double gamma = 0.7;
  double eta = 0.7;
  std::uint64_t seed = 1;
  RunMetrics metrics;
};

// Links bucketed by utilization quarter, weighted 1/2/3/4; idle links sit in
// the first bucket. Counts physical and logical edges (special edges mirror
// member pools and would double-count).
std::int64_t weighted_link_utilization(const AuxGraph& g);
Mbps total_consumed(const AuxGraph& g);
std::int64_t count_created_logical(const AuxGraph& g);

// Provision the request list against a private copy of the graph.
RunMetrics run_requests(AuxGraph graph, const WeightParams& wp,
                        const std::vector<ServiceRequest>& requests,
                        bool measure_timing);

// Full grid; cells run in parallel on private snapshots, output order fixed.
std::vector<SweepCell> run_sweep(const Network& net, const SweepConfig& cfg);

// val per cell plus exclusion flags; maxima taken across all included cells.
void compute_vals(std::vector<SweepCell>& cells);

void write_metrics_csv(const std::vector<SweepCell>& cells, std::ostream& os);
std::vector<SweepCell> read_metrics_csv(std::istream& is);
std::string report_text(std::vector<SweepCell> cells);

}  // namespace mlpce
