#include "weights.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace mlpce {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::PLF: return "plf";
    case Scheme::LF: return "lf";
    case Scheme::WGM: return "wgm";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "plf") return Scheme::PLF;
  if (s == "lf") return Scheme::LF;
  if (s == "wgm") return Scheme::WGM;
  throw ValidationError("unknown weight scheme: " + std::string(s));
}

void WeightParams::set_alpha(double a) {
  alpha = a;
  beta = 1.0 - a;
}

void WeightParams::validate() const {
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
    throw ParamError("alpha/beta outside [0,1]");
  if (std::abs(alpha + beta - 1.0) > 1e-12)
    throw ParamError("alpha + beta must equal 1");
  if (gamma <= 0.0 || gamma >= 1.0) throw ParamError("gamma outside (0,1)");
  if (eta <= 0.0 || eta >= 1.0) throw ParamError("eta outside (0,1)");
  if (d_max < 0.0 || b_max < 0.0) throw ParamError("negative normalizer");
  if (wgm_scale <= 0.0) throw ParamError("wgm_scale must be > 0");
}

double initial_physical_weight(double distance_km, double capacity_mbps,
                               const WeightParams& p) {
  if (p.d_max <= 0.0 || p.b_max <= 0.0)
    throw ParamError("normalizers not set");
  if (distance_km < 0.0 || distance_km > p.d_max * (1 + 1e-12))
    throw ParamError("link distance outside [0, d_max]: stale normalizer?");
  if (capacity_mbps <= 0.0 || capacity_mbps > p.b_max * (1 + 1e-12))
    throw ParamError("link capacity outside (0, b_max]: stale normalizer?");
  return p.alpha * (distance_km / p.d_max) +
         p.beta * (1.0 - capacity_mbps / p.b_max);
}

double initial_logical_weight(const std::vector<double>& underlying_weights,
                              const WeightParams& p) {
  if (underlying_weights.empty())
    throw ValidationError("logical link with no underlying links");
  double sum = 0.0;
  for (double w : underlying_weights) {
    if (w < 0.0) throw ValidationError("negative underlying weight");
    sum += w;
  }
  return p.gamma * sum;
}

double initial_special_edge_weight(const std::vector<double>& member_weights,
                                   const WeightParams& p) {
  if (member_weights.empty())
    throw ValidationError("special edge with no member links");
  double sum = 0.0;
  for (double w : member_weights) {
    if (w < 0.0) throw ValidationError("negative member weight");
    sum += w;
  }
  return p.eta * sum;
}

double dynamic_weight(const AuxEdge& e, double rho, const WeightParams& p) {
  if (rho < -1e-12 || rho > 1.0 + 1e-12)
    throw ValidationError("utilization outside [0,1]");
  rho = std::clamp(rho, 0.0, 1.0);
  if (e.kind == EdgeKind::ADAPTATION) return p.adaptation_eps;
  const double wi = e.weight_initial;
  switch (p.scheme) {
    case Scheme::PLF: {
      double k;
      if (rho <= 1.0 / 3.0) k = 1.0;
      else if (rho <= 2.0 / 3.0) k = 2.0;
      else if (rho <= 9.0 / 10.0) k = 5.0;
      else k = 10.0;
      return k * wi + wi * rho;
    }
    case Scheme::LF: {
      if (rho == 0.0) return wi;  // free capacity equals the maximum
      const double d =
          p.lf_normalize_distance ? e.distance_km / p.d_max : e.distance_km;
      return p.alpha * d - p.beta * std::log(1.0 - rho);
    }
    case Scheme::WGM: {
      if (p.alpha == 0.0 && rho == 0.0) return 1.0;
      if (rho == 0.0) return wi;
      const double d = std::max(e.distance_km, p.min_distance_km);
      return std::exp(p.alpha * std::log(d / p.d_max * p.wgm_scale) +
                      p.beta * std::log(rho));
    }
  }
  throw ParamError("unknown weight scheme");
}

void derive_normalizers(const AuxGraph& g, WeightParams& p) {
  if (p.d_max > 0.0 && p.b_max > 0.0) return;
  double dmax = 0.0, bmax = 0.0;
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::PHYSICAL) continue;
    dmax = std::max(dmax, e.distance_km);
    if (e.pool) bmax = std::max(bmax, to_double(e.pool->max_mbps));
  }
  if (p.d_max <= 0.0) p.d_max = dmax > 0.0 ? dmax : 1.0;
  if (p.b_max <= 0.0) p.b_max = bmax > 0.0 ? bmax : 1.0;
}

void assign_initial_weights(AuxGraph& g, const WeightParams& params) {
  WeightParams p = params;
  derive_normalizers(g, p);
  p.validate();

  // Edges are stored in dependency order: physical links first, then traced
  // logical links, then special edges, then any provisioning-created logical
  // links (whose underlying edges always precede them).
  for (auto& e : g.edges) {
    switch (e.kind) {
      case EdgeKind::PHYSICAL:
        e.weight_initial = initial_physical_weight(
            e.distance_km, e.pool ? to_double(e.pool->max_mbps) : 0.0, p);
        break;
      case EdgeKind::ADAPTATION:
        e.weight_initial = p.adaptation_eps;
        break;
      case EdgeKind::LOGICAL: {
        std::vector<double> under;
        under.reserve(e.underlying.size());
        for (EdgeIdx u : e.underlying) {
          if (u >= e.idx)
            throw BuildError("logical link " + e.id +
                             " depends on a later edge");
          under.push_back(g.edges[u].weight_initial);
        }
        e.weight_initial = initial_logical_weight(under, p);
        break;
      }
      case EdgeKind::RING_SPECIAL:
      case EdgeKind::DH_SPECIAL: {
        std::vector<double> members;
        members.reserve(e.underlying.size());
        for (EdgeIdx u : e.underlying)
          members.push_back(g.edges[u].weight_initial);
        e.weight_initial = initial_special_edge_weight(members, p);
        break;
      }
      case EdgeKind::DH_HUB_LEG:
        e.weight_initial = 0.0;  // member weights live on the hub spokes
        break;
    }
  }
  refresh_dynamic_weights(g, p);
}

void refresh_dynamic_weights(AuxGraph& g, const WeightParams& params) {
  WeightParams p = params;
  derive_normalizers(g, p);
  for (auto& e : g.edges)
    e.weight_dynamic = dynamic_weight(e, e.utilization(), p);
}

WeightFn dynamic_weight_view(const WeightParams& params) {
  if (params.d_max <= 0.0 || params.b_max <= 0.0)
    throw ParamError("weight view needs derived normalizers");
  return [p = params](const AuxGraph& g, EdgeIdx i) {
    const AuxEdge& e = g.edges[i];
    return dynamic_weight(e, e.utilization(), p);
  };
}

}  // namespace mlpce
