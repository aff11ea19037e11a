// Command line front end; talks to the engine only through the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlpce.h"

namespace {

int fail(const char* what, mlpce_status st) {
  std::fprintf(stderr, "error: %s: %s (status %d)\n", what,
               mlpce_last_error(), static_cast<int>(st));
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

struct NetworkHandle {
  mlpce_network* net = nullptr;
  ~NetworkHandle() { mlpce_network_free(net); }
};

struct GraphHandle {
  mlpce_graph* g = nullptr;
  ~GraphHandle() { mlpce_graph_free(g); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { mlpce_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-layer transport path computation engine"};
  app.require_subcommand(1);

  // generate
  std::string gen_params_file, gen_out, gen_requests_out;
  std::uint64_t gen_seed = 1;
  int gen_requests_n = 0;
  bool gen_print_counts = false;
  auto* gen = app.add_subcommand("generate", "generate a synthetic network");
  gen->add_option("--params", gen_params_file, "generator parameters (json)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "topology file to write")->required();
  gen->add_option("--requests", gen_requests_n, "also emit N service requests");
  gen->add_option("--requests-out", gen_requests_out, "requests file to write");
  gen->add_flag("--print-counts", gen_print_counts,
                "build the auxiliary graph and print its counts");

  // compute
  std::string c_topo, c_request, c_scheme = "plf";
  double c_alpha = 0.5, c_gamma = 0.7, c_eta = 0.7;
  bool c_no_provision = false;
  auto* comp = app.add_subcommand("compute", "compute a path for one request");
  comp->add_option("--topo", c_topo, "topology file")->required();
  comp->add_option("--request", c_request,
                   "request record or a requests file")->required();
  comp->add_option("--scheme", c_scheme, "plf|lf|wgm");
  comp->add_option("--alpha", c_alpha, "distance/capacity balance");
  comp->add_option("--gamma", c_gamma, "logical link weight factor");
  comp->add_option("--eta", c_eta, "special edge weight factor");
  comp->add_flag("--no-provision", c_no_provision,
                 "report paths without committing capacity");

  // sweep
  std::string s_topo, s_config, s_out;
  auto* sw = app.add_subcommand("sweep", "run the parameter sweep");
  sw->add_option("--topo", s_topo, "topology file")->required();
  sw->add_option("--config", s_config, "sweep config (json)");
  sw->add_option("--out", s_out, "metrics csv to write")->required();

  // report
  std::string r_csv;
  auto* rep = app.add_subcommand("report", "print marginal tables for a csv");
  rep->add_option("--csv", r_csv, "metrics csv")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    std::string params;
    if (!gen_params_file.empty()) params = read_file(gen_params_file);
    NetworkHandle net;
    if (auto st = mlpce_network_generate(params.c_str(), gen_seed, &net.net);
        st != MLPCE_OK)
      return fail("generate", st);
    if (auto st = mlpce_network_save(net.net, gen_out.c_str()); st != MLPCE_OK)
      return fail("save", st);
    OwnedString stats;
    if (auto st = mlpce_network_stats_json(net.net, &stats.s); st != MLPCE_OK)
      return fail("stats", st);
    std::fprintf(stderr, "wrote %s\n%s\n", gen_out.c_str(), stats.s);
    if (gen_requests_n > 0) {
      const std::string out =
          gen_requests_out.empty() ? gen_out + ".requests" : gen_requests_out;
      if (auto st = mlpce_requests_generate(net.net, gen_requests_n, gen_seed,
                                            out.c_str());
          st != MLPCE_OK)
        return fail("requests", st);
      std::fprintf(stderr, "wrote %s\n", out.c_str());
    }
    if (gen_print_counts) {
      GraphHandle g;
      if (auto st = mlpce_graph_build(net.net, "", &g.g); st != MLPCE_OK)
        return fail("graph build", st);
      OwnedString counts;
      if (auto st = mlpce_graph_counts_json(g.g, &counts.s); st != MLPCE_OK)
        return fail("counts", st);
      std::printf("%s\n", counts.s);
    }
    return 0;
  }

  if (comp->parsed()) {
    NetworkHandle net;
    if (auto st = mlpce_network_load(c_topo.c_str(), &net.net); st != MLPCE_OK)
      return fail("load", st);
    char weights[256];
    std::snprintf(weights, sizeof weights,
                  "{\"alpha\":%g,\"gamma\":%g,\"eta\":%g,\"scheme\":\"%s\"}",
                  c_alpha, c_gamma, c_eta, c_scheme.c_str());
    GraphHandle g;
    if (auto st = mlpce_graph_build(net.net, weights, &g.g); st != MLPCE_OK)
      return fail("graph build", st);

    std::vector<std::string> lines;
    if (file_exists(c_request)) {
      std::ifstream is(c_request);
      std::string line;
      bool header_seen = false;
      while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen && line.rfind("format ", 0) == 0) {
          header_seen = true;
          continue;
        }
        lines.push_back(line);
      }
    } else {
      lines.push_back(c_request.rfind("req ", 0) == 0 ? c_request
                                                      : "req r0 " + c_request);
    }

    bool any_rejected = false;
    for (const auto& line : lines) {
      OwnedString result;
      const auto st =
          mlpce_compute(g.g, line.c_str(), c_no_provision ? 0 : 1, &result.s);
      if (st == MLPCE_REJECTED) {
        any_rejected = true;
      } else if (st != MLPCE_OK) {
        return fail("compute", st);
      }
      std::printf("%s\n", result.s);
    }
    return any_rejected ? 2 : 0;
  }

  if (sw->parsed()) {
    NetworkHandle net;
    if (auto st = mlpce_network_load(s_topo.c_str(), &net.net); st != MLPCE_OK)
      return fail("load", st);
    std::string config;
    if (!s_config.empty()) config = read_file(s_config);
    if (auto st = mlpce_sweep(net.net, config.c_str(), s_out.c_str());
        st != MLPCE_OK)
      return fail("sweep", st);
    std::fprintf(stderr, "wrote %s\n", s_out.c_str());
    return 0;
  }

  if (rep->parsed()) {
    OwnedString text;
    if (auto st = mlpce_report(r_csv.c_str(), &text.s); st != MLPCE_OK)
      return fail("report", st);
    std::printf("%s", text.s);
    return 0;
  }
  return 0;
}
