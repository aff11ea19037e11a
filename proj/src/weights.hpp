#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aux_graph.hpp"

namespace mlpce {

enum class Scheme : std::uint8_t { PLF, LF, WGM };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view s);

struct WeightParams {
  double alpha = 0.5;
  double beta = 0.5;   // kept equal to 1 - alpha
  double gamma = 0.7;
  double eta = 0.7;
  double d_max = 0.0;  // km; 0 means derive from the graph
  double b_max = 0.0;  // Mbps; 0 means derive from the graph
  Scheme scheme = Scheme::PLF;
  bool lf_normalize_distance = true;
  double wgm_scale = 100.0;
  double adaptation_eps = 1e-6;
  double min_distance_km = 0.1;  // floor for log-of-distance terms

  void set_alpha(double a);
  void validate() const;
};

// Initial weights
double initial_physical_weight(double distance_km, double capacity_mbps,
                               const WeightParams& p);
double initial_logical_weight(const std::vector<double>& underlying_weights,
                              const WeightParams& p);
double initial_special_edge_weight(const std::vector<double>& member_weights,
                                   const WeightParams& p);

// Dynamic weight of one edge at utilization rho, dispatching on p.scheme.
double dynamic_weight(const AuxEdge& e, double rho, const WeightParams& p);

// Fill d_max / b_max from the graph when left at 0.
void derive_normalizers(const AuxGraph& g, WeightParams& p);

// Recompute weight_initial for every edge (physical via the distance/capacity
// formula, adaptation epsilon, logical and special edges from their parts).
void assign_initial_weights(AuxGraph& g, const WeightParams& p);

// Refresh the cached weight_dynamic fields from current pool utilizations.
void refresh_dynamic_weights(AuxGraph& g, const WeightParams& p);

// Edge -> dynamic weight view used by the path engine.
using WeightFn = std::function<double(const AuxGraph&, EdgeIdx)>;
WeightFn dynamic_weight_view(const WeightParams& p);

}  // namespace mlpce
