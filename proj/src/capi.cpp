#include "mlpce.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "graph_build.hpp"
#include "json.hpp"
#include "netgen.hpp"
#include "sim.hpp"
#include "topo_io.hpp"

using namespace mlpce;
using nlohmann::json;

struct mlpce_network {
  Network net;
};

struct mlpce_graph {
  AuxGraph graph;
  WeightParams wp;
  Provisioner prov;
  explicit mlpce_graph(AuxGraph g, const WeightParams& p)
      : graph(std::move(g)), wp(p), prov(graph, p) {}
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
mlpce_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return MLPCE_ERR_VALIDATION;
  } catch (const ParamError& e) {
    g_last_error = e.what();
    return MLPCE_ERR_PARAM;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return MLPCE_ERR_IO;
  } catch (const CapacityError& e) {
    g_last_error = e.what();
    return MLPCE_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MLPCE_ERR;
  }
}

json path_to_json(const AuxGraph& g, const PathResult& p) {
  json jj;
  jj["cost"] = p.cost;
  jj["src"] = g.nodes[p.src].id;
  jj["dst"] = g.nodes[p.dst].id;
  auto& edges = jj["edges"] = json::array();
  for (EdgeIdx e : p.edges) edges.push_back(g.edges[e].id);
  return jj;
}

}  // namespace

extern "C" {

const char* mlpce_version(void) { return "1.0.0"; }

const char* mlpce_last_error(void) { return g_last_error.c_str(); }

void mlpce_string_free(char* s) { std::free(s); }

mlpce_status mlpce_network_generate(const char* params_json, uint64_t seed,
                                    mlpce_network** out) {
  return guarded([&] {
    if (!out) throw ValidationError("out handle is null");
    GenParams p = gen_params_from_json(params_json ? params_json : "");
    *out = new mlpce_network{generate(p, seed)};
    return MLPCE_OK;
  });
}

mlpce_status mlpce_network_load(const char* path, mlpce_network** out) {
  return guarded([&] {
    if (!out || !path) throw ValidationError("null argument");
    *out = new mlpce_network{read_network_file(path)};
    return MLPCE_OK;
  });
}

mlpce_status mlpce_network_save(const mlpce_network* net, const char* path) {
  return guarded([&] {
    if (!net || !path) throw ValidationError("null argument");
    write_network_file(net->net, path);
    return MLPCE_OK;
  });
}

mlpce_status mlpce_network_stats_json(const mlpce_network* net,
                                      char** json_out) {
  return guarded([&] {
    if (!net || !json_out) throw ValidationError("null argument");
    json j;
    j["elements"] = net->net.elements.size();
    j["links"] = net->net.links.size();
    j["topologies"] = net->net.topologies.size();
    j["srlgs"] = net->net.srlgs().size();
    *json_out = dup_string(j.dump(2));
    return MLPCE_OK;
  });
}

mlpce_status mlpce_requests_generate(const mlpce_network* net, int count,
                                     uint64_t seed, const char* out_path) {
  return guarded([&] {
    if (!net || !out_path) throw ValidationError("null argument");
    write_requests_file(generate_requests(net->net, count, seed), out_path);
    return MLPCE_OK;
  });
}

void mlpce_network_free(mlpce_network* net) { delete net; }

mlpce_status mlpce_graph_build(const mlpce_network* net,
                               const char* weights_json, mlpce_graph** out) {
  return guarded([&] {
    if (!net || !out) throw ValidationError("null argument");
    WeightParams wp = weight_params_from_json(weights_json ? weights_json : "");
    AuxGraph g = build_auxiliary_graph(net->net, wp);
    derive_normalizers(g, wp);
    *out = new mlpce_graph(std::move(g), wp);
    return MLPCE_OK;
  });
}

mlpce_status mlpce_graph_counts_json(const mlpce_graph* g, char** json_out) {
  return guarded([&] {
    if (!g || !json_out) throw ValidationError("null argument");
    const GraphCounts c = g->graph.counts();
    json j;
    j["tech_layer_nodes"] = c.tech_layer_nodes;
    j["hub_nodes"] = c.hub_nodes;
    j["adaptation_edges"] = c.adaptation_edges;
    j["physical_edges"] = c.physical_edges;
    j["logical_edges"] = c.logical_edges;
    j["special_edges"] = c.special_edges;
    j["total_edges"] = c.total_edges;
    *json_out = dup_string(j.dump(2));
    return MLPCE_OK;
  });
}

uint64_t mlpce_graph_state_hash(const mlpce_graph* g) {
  return g ? g->graph.state_hash() : 0;
}

void mlpce_graph_free(mlpce_graph* g) { delete g; }

mlpce_status mlpce_compute(mlpce_graph* g, const char* request_line,
                           int provision, char** result_json_out) {
  return guarded([&] {
    if (!g || !request_line) throw ValidationError("null argument");
    const ServiceRequest req = parse_request_line(request_line);
    const ProvisioningResult res = g->prov.find_path(req, provision != 0);

    json j;
    j["request"] = res.request_id;
    j["accepted"] = res.accepted;
    switch (res.status) {
      case ProvisionStatus::ACCEPTED: j["status"] = "accepted"; break;
      case ProvisionStatus::CANDIDATES_ONLY: j["status"] = "candidates"; break;
      case ProvisionStatus::REJECTED_NO_PATH:
        j["status"] = "rejected_no_path";
        break;
      case ProvisionStatus::REJECTED_CAPACITY:
        j["status"] = "rejected_capacity";
        break;
    }
    auto& paths = j["paths"] = json::array();
    for (const auto& p : res.paths) paths.push_back(path_to_json(g->graph, p));
    auto& pps = j["protected_paths"] = json::array();
    for (const auto& pp : res.protected_paths) {
      json jp;
      jp["working"] = path_to_json(g->graph, pp.working);
      jp["combined_cost"] = pp.combined_cost;
      auto& prot = jp["protection"] = json::array();
      for (const auto& ps : pp.protection) {
        json js = path_to_json(g->graph, ps.path);
        js["segment_src"] = g->graph.nodes[ps.seg_src].id;
        js["segment_dst"] = g->graph.nodes[ps.seg_dst].id;
        prot.push_back(std::move(js));
      }
      pps.push_back(std::move(jp));
    }
    j["created_logical_links"] = res.created_logical_links;
    j["provisioned_mbps"] = to_string(res.provisioned_mbps_total);
    if (!res.reject_reason.empty()) j["reject_reason"] = res.reject_reason;
    if (result_json_out) *result_json_out = dup_string(j.dump(2));
    return res.accepted || res.status == ProvisionStatus::CANDIDATES_ONLY
               ? MLPCE_OK
               : MLPCE_REJECTED;
  });
}

mlpce_status mlpce_sweep(const mlpce_network* net, const char* sweep_json,
                         const char* csv_out_path) {
  return guarded([&] {
    if (!net || !csv_out_path) throw ValidationError("null argument");
    const SweepConfig cfg =
        sweep_config_from_json(sweep_json ? sweep_json : "");
    const auto cells = run_sweep(net->net, cfg);
    std::ofstream os(csv_out_path, std::ios::binary);
    if (!os) throw IoError(std::string("cannot write ") + csv_out_path);
    write_metrics_csv(cells, os);
    return MLPCE_OK;
  });
}

mlpce_status mlpce_report(const char* csv_path, char** text_out) {
  return guarded([&] {
    if (!csv_path || !text_out) throw ValidationError("null argument");
    std::ifstream is(csv_path, std::ios::binary);
    if (!is) throw IoError(std::string("cannot read ") + csv_path);
    *text_out = dup_string(report_text(read_metrics_csv(is)));
    return MLPCE_OK;
  });
}

}  // extern "C"
