#pragma once

#include <iosfwd>
#include <string>

#include "netgen.hpp"
#include "weights.hpp"

namespace mlpce {

// Versioned text formats; serialization is byte-stable for golden tests.
void write_network(const Network& net, std::ostream& os);
Network read_network(std::istream& is);
void write_network_file(const Network& net, const std::string& path);
Network read_network_file(const std::string& path);

void write_requests(const std::vector<ServiceRequest>& reqs, std::ostream& os);
std::vector<ServiceRequest> read_requests(std::istream& is);
void write_requests_file(const std::vector<ServiceRequest>& reqs,
                         const std::string& path);
std::vector<ServiceRequest> read_requests_file(const std::string& path);
ServiceRequest parse_request_line(const std::string& line);

// JSON configs (missing keys keep defaults).
GenParams gen_params_from_json(const std::string& text);
std::string gen_params_to_json(const GenParams& p);
WeightParams weight_params_from_json(const std::string& text);

struct SweepConfig {
  std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                             0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> gammas{0.5, 0.7, 0.9};
  std::vector<double> etas{0.5, 0.7, 0.9};
  std::vector<Scheme> schemes{Scheme::PLF, Scheme::LF, Scheme::WGM};
  std::vector<std::uint64_t> seeds{1};
  int request_count = 500;
  bool measure_timing = true;
  int threads = 0;  // 0: hardware concurrency
  bool lf_normalize_distance = true;
  double wgm_scale = 100.0;

  void validate() const;
};

SweepConfig sweep_config_from_json(const std::string& text);

}  // namespace mlpce
