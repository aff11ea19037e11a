#include "topo_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace mlpce {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// key=value fields after the positional tokens
std::map<std::string, std::string> kv_fields(
    const std::vector<std::string>& toks, std::size_t from) {
  std::map<std::string, std::string> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos)
      throw IoError("expected key=value, got: " + toks[i]);
    out[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

std::string fmt_km(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", d);
  return buf;
}

std::string join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

void write_network(const Network& input, std::ostream& os) {
  Network net = input;
  net.canonicalize();
  os << "format mlpce-topo 1\n";
  for (const auto& ne : net.elements) {
    os << "ne " << ne.id << " loc=" << ne.location << " tl=";
    std::vector<std::string> tls, ads;
    for (auto tl : ne.supported) tls.push_back(tl_name(tl));
    for (const auto& [c, s] : ne.adaptations)
      ads.push_back(tl_name(c) + ">" + tl_name(s));
    os << join(tls, ',');
    if (!ads.empty()) os << " ad=" << join(ads, ',');
    os << '\n';
  }
  for (const auto& l : net.links) {
    os << "link " << l.id << ' ' << l.ne_a << ':' << tl_name(l.tl_a) << ' '
       << l.ne_b << ':' << tl_name(l.tl_b) << " rate=" << rate_name(l.rate)
       << " ch=" << l.channels << " dist=" << fmt_km(l.distance_km)
       << " prot=" << (l.self_protected ? 1 : 0);
    if (!l.srlg_ids.empty()) os << " srlg=" << join(l.srlg_ids, ',');
    if (l.client_end) os << " client=" << *l.client_end;
    if (l.client_rate) os << " crate=" << rate_name(*l.client_rate);
    os << '\n';
  }
  for (const auto& t : net.topologies) {
    os << "topo " << t.id << " kind=" << topology_kind_name(t.kind)
       << " links=" << join(t.member_links, ',');
    if (!t.aggregates.empty()) os << " agg=" << join(t.aggregates, ',');
    os << '\n';
  }
}

Network read_network(std::istream& is) {
  Network net;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto toks = tokens(line);
    if (toks.empty()) continue;
    try {
      if (!header) {
        if (toks.size() != 3 || toks[0] != "format" || toks[1] != "mlpce-topo")
          throw IoError("missing 'format mlpce-topo <version>' header");
        if (toks[2] != "1") throw IoError("unsupported version " + toks[2]);
        header = true;
        continue;
      }
      if (toks[0] == "ne") {
        NetworkElement ne;
        ne.id = toks.at(1);
        auto kv = kv_fields(toks, 2);
        ne.location = kv.at("loc");
        for (const auto& t : split(kv.at("tl"), ','))
          ne.supported.push_back(parse_tech_layer(t));
        if (kv.count("ad")) {
          for (const auto& a : split(kv.at("ad"), ',')) {
            auto gt = a.find('>');
            if (gt == std::string::npos) throw IoError("bad adaptation " + a);
            ne.adaptations.push_back({parse_tech_layer(a.substr(0, gt)),
                                      parse_tech_layer(a.substr(gt + 1))});
          }
        }
        net.elements.push_back(std::move(ne));
      } else if (toks[0] == "link") {
        LinkSpec l;
        l.id = toks.at(1);
        auto parse_end = [](const std::string& s, std::string& ne,
                            TechLayer& tl) {
          auto c = s.find(':');
          if (c == std::string::npos) throw IoError("bad endpoint " + s);
          ne = s.substr(0, c);
          tl = parse_tech_layer(s.substr(c + 1));
        };
        parse_end(toks.at(2), l.ne_a, l.tl_a);
        parse_end(toks.at(3), l.ne_b, l.tl_b);
        auto kv = kv_fields(toks, 4);
        l.rate = parse_rate(kv.at("rate"));
        l.channels = std::stoi(kv.at("ch"));
        l.distance_km = std::stod(kv.at("dist"));
        l.self_protected = kv.at("prot") == "1";
        if (kv.count("srlg"))
          for (const auto& s : split(kv.at("srlg"), ','))
            l.srlg_ids.push_back(s);
        if (kv.count("client")) l.client_end = kv.at("client").at(0);
        if (kv.count("crate")) l.client_rate = parse_rate(kv.at("crate"));
        net.links.push_back(std::move(l));
      } else if (toks[0] == "topo") {
        Topology t;
        t.id = toks.at(1);
        auto kv = kv_fields(toks, 2);
        t.kind = parse_topology_kind(kv.at("kind"));
        for (const auto& s : split(kv.at("links"), ','))
          t.member_links.push_back(s);
        if (kv.count("agg"))
          for (const auto& s : split(kv.at("agg"), ','))
            t.aggregates.push_back(s);
        net.topologies.push_back(std::move(t));
      } else {
        throw IoError("unknown record '" + toks[0] + "'");
      }
    } catch (const std::exception& e) {
      throw IoError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) throw IoError("empty topology file");
  net.canonicalize();
  net.validate();
  return net;
}

void write_network_file(const Network& net, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  write_network(net, os);
}

Network read_network_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  return read_network(is);
}

void write_requests(const std::vector<ServiceRequest>& reqs,
                    std::ostream& os) {
  os << "format mlpce-req 1\n";
  for (const auto& r : reqs) {
    os << "req " << r.id << " src=" << r.src_ne << " dst=" << r.dst_ne
       << " type=" << path_type_name(r.path_type) << " n=" << r.n
       << " rate=" << rate_name(r.rate);
    if (r.rate == LayerRate::ETH_BW) os << " cap=" << to_string(r.capacity_mbps);
    os << '\n';
  }
}

ServiceRequest parse_request_line(const std::string& line) {
  auto toks = tokens(line);
  if (toks.size() < 2 || toks[0] != "req")
    throw IoError("expected 'req <id> key=value...': " + line);
  ServiceRequest r;
  r.id = toks[1];
  auto kv = kv_fields(toks, 2);
  r.src_ne = kv.at("src");
  r.dst_ne = kv.at("dst");
  if (kv.count("type")) r.path_type = parse_path_type(kv.at("type"));
  if (kv.count("n")) r.n = std::stoi(kv.at("n"));
  r.rate = parse_rate(kv.at("rate"));
  if (kv.count("cap")) r.capacity_mbps = parse_mbps(kv.at("cap"));
  return r;
}

std::vector<ServiceRequest> read_requests(std::istream& is) {
  std::vector<ServiceRequest> out;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      if (!header) {
        auto toks = tokens(line);
        if (toks.size() != 3 || toks[0] != "format" || toks[1] != "mlpce-req")
          throw IoError("missing 'format mlpce-req <version>' header");
        header = true;
        continue;
      }
      out.push_back(parse_request_line(line));
    } catch (const std::exception& e) {
      throw IoError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_requests_file(const std::vector<ServiceRequest>& reqs,
                         const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  write_requests(reqs, os);
}

std::vector<ServiceRequest> read_requests_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  return read_requests(is);
}

// ---------------------------------------------------------------------------
// JSON configs

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("bad json: ") + e.what());
  }
}

}  // namespace

GenParams gen_params_from_json(const std::string& text) {
  GenParams p;
  if (text.empty()) return p;
  json j = parse_json(text);
  auto get = [&](const char* k, auto& field) {
    if (j.contains(k)) field = j.at(k).get<std::decay_t<decltype(field)>>();
  };
  get("locations", p.locations);
  get("nld_links", p.nld_links);
  get("nld_channels", p.nld_channels);
  get("metro_core_nodes", p.metro_core_nodes);
  get("metro_channels", p.metro_channels);
  get("agg_ring_pairs", p.agg_ring_pairs);
  get("access_rings", p.access_rings);
  get("agg_dh_pairs", p.agg_dh_pairs);
  get("dh_chain_nodes", p.dh_chain_nodes);
  get("access_dh_per_span", p.access_dh_per_span);
  get("random_agg_ring_pairs", p.random_agg_ring_pairs);
  get("linear_chain_pairs", p.linear_chain_pairs);
  get("eth_ring_sizes", p.eth_ring_sizes);
  get("eth_dh_rings", p.eth_dh_rings);
  get("eth_core_ring_nodes", p.eth_core_ring_nodes);
  get("nld_dist_km", p.nld_dist_km);
  get("metro_dist_km", p.metro_dist_km);
  get("ring_dist_km", p.ring_dist_km);
  p.validate();
  return p;
}

std::string gen_params_to_json(const GenParams& p) {
  json j;
  j["locations"] = p.locations;
  j["nld_links"] = p.nld_links;
  j["nld_channels"] = p.nld_channels;
  j["metro_core_nodes"] = p.metro_core_nodes;
  j["metro_channels"] = p.metro_channels;
  j["agg_ring_pairs"] = p.agg_ring_pairs;
  j["access_rings"] = p.access_rings;
  j["agg_dh_pairs"] = p.agg_dh_pairs;
  j["dh_chain_nodes"] = p.dh_chain_nodes;
  j["access_dh_per_span"] = p.access_dh_per_span;
  j["random_agg_ring_pairs"] = p.random_agg_ring_pairs;
  j["linear_chain_pairs"] = p.linear_chain_pairs;
  j["eth_ring_sizes"] = p.eth_ring_sizes;
  j["eth_dh_rings"] = p.eth_dh_rings;
  j["eth_core_ring_nodes"] = p.eth_core_ring_nodes;
  j["nld_dist_km"] = p.nld_dist_km;
  j["metro_dist_km"] = p.metro_dist_km;
  j["ring_dist_km"] = p.ring_dist_km;
  return j.dump(2);
}

WeightParams weight_params_from_json(const std::string& text) {
  WeightParams p;
  if (text.empty()) return p;
  json j = parse_json(text);
  if (j.contains("alpha")) p.set_alpha(j.at("alpha").get<double>());
  if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
  if (j.contains("eta")) p.eta = j.at("eta").get<double>();
  if (j.contains("scheme"))
    p.scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("lf_normalize_distance"))
    p.lf_normalize_distance = j.at("lf_normalize_distance").get<bool>();
  if (j.contains("wgm_scale")) p.wgm_scale = j.at("wgm_scale").get<double>();
  if (j.contains("d_max")) p.d_max = j.at("d_max").get<double>();
  if (j.contains("b_max")) p.b_max = j.at("b_max").get<double>();
  return p;
}

void SweepConfig::validate() const {
  if (alphas.empty() || gammas.empty() || etas.empty() || schemes.empty() ||
      seeds.empty())
    throw ValidationError("sweep config has an empty grid");
  for (double a : alphas)
    if (a < 0.0 || a > 1.0) throw ValidationError("alpha outside [0,1]");
  for (double x : gammas)
    if (x <= 0.0 || x >= 1.0) throw ValidationError("gamma outside (0,1)");
  for (double x : etas)
    if (x <= 0.0 || x >= 1.0) throw ValidationError("eta outside (0,1)");
  if (request_count < 0) throw ValidationError("negative request count");
}

SweepConfig sweep_config_from_json(const std::string& text) {
  SweepConfig c;
  if (text.empty()) {
    c.validate();
    return c;
  }
  json j = parse_json(text);
  if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
  if (j.contains("gammas")) c.gammas = j.at("gammas").get<std::vector<double>>();
  if (j.contains("etas")) c.etas = j.at("etas").get<std::vector<double>>();
  if (j.contains("schemes")) {
    c.schemes.clear();
    for (const auto& s : j.at("schemes"))
      c.schemes.push_back(parse_scheme(s.get<std::string>()));
  }
  if (j.contains("seeds"))
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("requests")) c.request_count = j.at("requests").get<int>();
  if (j.contains("measure_timing"))
    c.measure_timing = j.at("measure_timing").get<bool>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("lf_normalize_distance"))
    c.lf_normalize_distance = j.at("lf_normalize_distance").get<bool>();
  if (j.contains("wgm_scale")) c.wgm_scale = j.at("wgm_scale").get<double>();
  c.validate();
  return c;
}

}  // namespace mlpce
