#include "sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace mlpce {

std::int64_t weighted_link_utilization(const AuxGraph& g) {
  std::int64_t u = 0;
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::PHYSICAL && e.kind != EdgeKind::LOGICAL) continue;
    const double rho = e.utilization();
    if (rho <= 0.25) u += 1;
    else if (rho <= 0.50) u += 2;
    else if (rho <= 0.75) u += 3;
    else u += 4;
  }
  return u;
}

Mbps total_consumed(const AuxGraph& g) {
  Mbps b{0};
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::PHYSICAL && e.kind != EdgeKind::LOGICAL) continue;
    if (e.pool) b += e.pool->max_mbps - e.pool->available_mbps;
  }
  return b;
}

std::int64_t count_created_logical(const AuxGraph& g) {
  std::int64_t n = 0;
  for (const auto& e : g.edges) n += e.created ? 1 : 0;
  return n;
}

RunMetrics run_requests(AuxGraph graph, const WeightParams& wp,
                        const std::vector<ServiceRequest>& requests,
                        bool measure_timing) {
  using clock = std::chrono::steady_clock;
  assign_initial_weights(graph, wp);
  Provisioner prov(graph, wp);
  RunMetrics m;
  double ms_unprot = 0.0, ms_lpp = 0.0;
  for (const auto& req : requests) {
    if (measure_timing) {
      ServiceRequest probe = req;
      probe.path_type = PathType::UNPROTECTED;
      probe.n = 1;
      const auto t0 = clock::now();
      prov.find_path(probe, /*provision=*/false);
      ms_unprot +=
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }
    const auto t1 = clock::now();
    const auto res = prov.find_path(req);
    if (measure_timing)
      ms_lpp +=
          std::chrono::duration<double, std::milli>(clock::now() - t1).count();
    if (res.accepted) {
      m.accepted += 1;
      m.r_mbps += demanded_mbps(req.rate, req.capacity_mbps);
    } else {
      m.rejected += 1;
    }
  }
  m.b_mbps = total_consumed(graph);
  m.l_count = count_created_logical(graph);
  m.u_weighted = weighted_link_utilization(graph);
  if (!requests.empty() && measure_timing) {
    ms_unprot /= requests.size();
    ms_lpp /= requests.size();
  }
  m.avg_ms_unprot = ms_unprot;
  m.avg_ms_lpp = ms_lpp;
  return m;
}

std::vector<SweepCell> run_sweep(const Network& net, const SweepConfig& cfg) {
  cfg.validate();
  WeightParams base_wp;
  base_wp.lf_normalize_distance = cfg.lf_normalize_distance;
  base_wp.wgm_scale = cfg.wgm_scale;
  const AuxGraph base = build_auxiliary_graph(net, base_wp);

  std::map<std::uint64_t, std::vector<ServiceRequest>> request_lists;
  for (auto seed : cfg.seeds)
    if (!request_lists.count(seed))
      request_lists[seed] = generate_requests(net, cfg.request_count, seed);

  std::vector<SweepCell> cells;
  for (Scheme s : cfg.schemes)
    for (double a : cfg.alphas)
      for (double gm : cfg.gammas)
        for (double et : cfg.etas)
          for (auto seed : cfg.seeds) {
            SweepCell c;
            c.scheme = s;
            c.alpha = a;
            c.gamma = gm;
            c.eta = et;
            c.seed = seed;
            cells.push_back(c);
          }

  unsigned nthreads = cfg.threads > 0
                          ? static_cast<unsigned>(cfg.threads)
                          : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<std::size_t>(nthreads, cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      SweepCell& c = cells[i];
      WeightParams wp = base_wp;
      wp.set_alpha(c.alpha);
      wp.gamma = c.gamma;
      wp.eta = c.eta;
      wp.scheme = c.scheme;
      c.metrics = run_requests(base, wp, request_lists.at(c.seed),
                               cfg.measure_timing);
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  compute_vals(cells);
  return cells;
}

void compute_vals(std::vector<SweepCell>& cells) {
  double bmax = 0.0, lmax = 0.0, umax = 0.0;
  for (auto& c : cells) {
    c.metrics.excluded = c.metrics.r_mbps <= Mbps(0);
    if (c.metrics.excluded) continue;
    bmax = std::max(bmax, to_double(c.metrics.b_mbps));
    lmax = std::max(lmax, static_cast<double>(c.metrics.l_count));
    umax = std::max(umax, static_cast<double>(c.metrics.u_weighted));
  }
  for (auto& c : cells) {
    if (c.metrics.excluded) {
      c.metrics.val = 0.0;
      continue;
    }
    const double r = to_double(c.metrics.r_mbps);
    auto term = [&](double x, double xmax) {
      if (x <= 0.0) return 0.0;  // empty metric contributes nothing
      return (x / r) * (1.0 + std::log(xmax / x));
    };
    c.metrics.val = term(to_double(c.metrics.b_mbps), bmax) +
                    term(static_cast<double>(c.metrics.l_count), lmax) +
                    term(static_cast<double>(c.metrics.u_weighted), umax);
  }
}

namespace {

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

void write_metrics_csv(const std::vector<SweepCell>& cells, std::ostream& os) {
  os << "scheme,alpha,gamma,eta,seed,R_mbps,B_mbps,L_count,U_weighted,val,"
        "avg_ms_unprot,avg_ms_lpp\n";
  for (const auto& c : cells) {
    os << scheme_name(c.scheme) << ',' << fmt(c.alpha, 2) << ','
       << fmt(c.gamma, 2) << ',' << fmt(c.eta, 2) << ',' << c.seed << ','
       << to_string(c.metrics.r_mbps) << ',' << to_string(c.metrics.b_mbps)
       << ',' << c.metrics.l_count << ',' << c.metrics.u_weighted << ','
       << fmt(c.metrics.val, 6) << ',' << fmt(c.metrics.avg_ms_unprot, 3)
       << ',' << fmt(c.metrics.avg_ms_lpp, 3) << '\n';
  }
}

std::vector<SweepCell> read_metrics_csv(std::istream& is) {
  std::vector<SweepCell> out;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty csv");
  if (line.rfind("scheme,alpha,gamma,eta,seed,", 0) != 0)
    throw IoError("unexpected csv header: " + line);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    f.push_back(cur);
    if (f.size() != 12)
      throw IoError("csv line " + std::to_string(lineno) + ": want 12 fields");
    try {
      SweepCell c;
      c.scheme = parse_scheme(f[0]);
      c.alpha = std::stod(f[1]);
      c.gamma = std::stod(f[2]);
      c.eta = std::stod(f[3]);
      c.seed = std::stoull(f[4]);
      c.metrics.r_mbps = parse_mbps(f[5]);
      c.metrics.b_mbps = parse_mbps(f[6]);
      c.metrics.l_count = std::stoll(f[7]);
      c.metrics.u_weighted = std::stoll(f[8]);
      c.metrics.val = std::stod(f[9]);
      c.metrics.avg_ms_unprot = std::stod(f[10]);
      c.metrics.avg_ms_lpp = std::stod(f[11]);
      out.push_back(c);
    } catch (const std::exception& e) {
      throw IoError("csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string report_text(std::vector<SweepCell> cells) {
  compute_vals(cells);  // recompute from R/B/L/U so the report is replayable
  std::size_t excluded = 0;
  for (const auto& c : cells) excluded += c.metrics.excluded ? 1 : 0;

  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> by_scheme;
  std::map<double, Acc> by_alpha, by_gamma, by_eta;
  for (const auto& c : cells) {
    if (c.metrics.excluded) continue;
    auto add = [&](Acc& a) {
      a.sum += c.metrics.val;
      a.n += 1;
    };
    add(by_scheme[std::string(scheme_name(c.scheme))]);
    add(by_alpha[c.alpha]);
    add(by_gamma[c.gamma]);
    add(by_eta[c.eta]);
  }

  std::ostringstream os;
  os << "combined performance marginals (lower is better)\n";
  auto table = [&os](const std::string& name, auto& m) {
    os << '\n' << name << "  val\n";
    for (const auto& [k, a] : m) {
      std::ostringstream key;
      if constexpr (std::is_same_v<std::decay_t<decltype(k)>, double>)
        key << fmt(k, 2);
      else
        key << k;
      os << "  " << std::left << std::setw(8) << key.str()
         << fmt(a.n ? a.sum / a.n : 0.0, 6) << '\n';
    }
  };
  table("scheme", by_scheme);
  table("alpha", by_alpha);
  table("gamma", by_gamma);
  table("eta", by_eta);
  os << "\ncells: " << cells.size() << "  excluded (no accepted demand): "
     << excluded << '\n';
  return os.str();
}

}  // namespace mlpce
