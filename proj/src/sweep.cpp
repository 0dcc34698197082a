#include "usblnav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>
#include <tuple>

namespace usblnav {

std::vector<SweepCase> expand_grid(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepCase> out;
  for (const double side : spec.side) {
    for (const int n_asv : spec.n_asv) {
      for (const int n_auv : spec.n_auv) {
        const std::size_t n_angles = (spec.collapse_angles && n_asv == 1) ? 1 : spec.alpha0_deg.size();
        for (std::size_t a = 0; a < n_angles; ++a) {
          for (int s = 0; s < spec.seeds; ++s) {
            SweepCase c;
            c.cfg = spec.base;
            c.cfg.side = side;
            c.cfg.n_asv = n_asv;
            c.cfg.n_auv = n_auv;
            c.alpha0_deg = spec.alpha0_deg[a];
            c.cfg.alpha0 = deg2rad(c.alpha0_deg);
            c.cfg.seed = spec.base.seed + static_cast<std::uint64_t>(s);
            c.cfg.log_events = false;
            c.cfg.trace = false;
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return out;
}

SweepRow summarize(const SweepCase& c, const MissionReport& rep) {
  SweepRow r;
  r.side = c.cfg.side;
  r.n_auv = c.cfg.n_auv;
  r.n_asv = c.cfg.n_asv;
  r.alpha0_deg = c.alpha0_deg;
  r.seed = c.cfg.seed;
  r.config_hash = config_hash(c.cfg);
  r.sim_time = rep.sim_time;
  r.mean_cte = rep.mean_cte();
  if (!rep.auv.empty()) {
    r.min_coverage = 1.0;
    for (const auto& a : rep.auv) {
      r.max_auv_cte = std::max(r.max_auv_cte, a.mean_cte);
      r.mean_est_error += a.mean_est_error;
      r.mean_coverage += a.coverage;
      r.min_coverage = std::min(r.min_coverage, a.coverage);
    }
    const auto n = static_cast<double>(rep.auv.size());
    r.mean_est_error /= n;
    r.mean_coverage /= n;
    r.fix_rate_per_auv = rep.fix_rate / n;
  }
  r.total_fixes = rep.total_fixes();
  r.fix_rate = rep.fix_rate;
  if (!rep.allocation.empty()) {
    const auto [lo, hi] = std::minmax_element(rep.allocation.begin(), rep.allocation.end());
    r.min_allocation = *lo;
    r.max_allocation = *hi;
  }
  r.latency_mean = rep.latency_mean;
  r.latency_p95 = rep.latency_p95;
  r.delivered = rep.delivered;
  r.dropped = rep.dropped;
  r.rounds = rep.protocol.rounds;
  r.max_colors = rep.protocol.max_colors;
  r.improper_colorings = rep.protocol.improper_colorings;
  r.schedule_conflicts = rep.protocol.schedule_conflicts;
  r.causality_violations = rep.causality_violations;
  return r;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepCase>& cases, unsigned parallelism) {
  std::vector<SweepRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const auto& c = cases[i];
      try {
        rows[i] = summarize(c, run(c.cfg));
      } catch (const std::exception& e) {
        SweepRow r;
        r.side = c.cfg.side;
        r.n_auv = c.cfg.n_auv;
        r.n_asv = c.cfg.n_asv;
        r.alpha0_deg = c.alpha0_deg;
        r.seed = c.cfg.seed;
        r.config_hash = config_hash(c.cfg);
        r.ok = false;
        r.error = e.what();
        rows[i] = std::move(r);
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(cases.size())));
  if (n_threads == 1) {
    worker();
    return rows;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

namespace {

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = sd = 0.0;
  if (v.empty()) return;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return;
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// CSV-safe single field: strip separators and line breaks.
std::string clean(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '\r' || ch == '"'; }, ' ');
  return s;
}

}  // namespace

std::vector<CellStats> aggregate(const std::vector<SweepRow>& rows) {
  using Key = std::tuple<double, int, int>;
  struct Acc {
    std::size_t runs = 0, failures = 0;
    std::vector<double> cte, err, cov, rate, lat;
  };
  std::map<Key, Acc> cells;
  for (const auto& r : rows) {
    auto& a = cells[{r.side, r.n_asv, r.n_auv}];
    ++a.runs;
    if (!r.ok) {
      ++a.failures;
      continue;
    }
    a.cte.push_back(r.mean_cte);
    a.err.push_back(r.mean_est_error);
    a.cov.push_back(r.mean_coverage);
    a.rate.push_back(r.fix_rate_per_auv);
    a.lat.push_back(r.latency_mean);
  }
  std::vector<CellStats> out;
  for (const auto& [key, a] : cells) {
    CellStats c;
    std::tie(c.side, c.n_asv, c.n_auv) = key;
    c.runs = a.runs;
    c.failures = a.failures;
    mean_std(a.cte, c.cte_mean, c.cte_std);
    mean_std(a.err, c.err_mean, c.err_std);
    mean_std(a.cov, c.coverage_mean, c.coverage_std);
    mean_std(a.rate, c.fix_rate_mean, c.fix_rate_std);
    mean_std(a.lat, c.latency_mean, c.latency_std);
    out.push_back(c);
  }
  return out;
}

std::string runs_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "# usblnav-sweep-csv v1\n"
      "L,n_asv,n_auv,alpha0_deg,seed,config_hash,status,error,sim_time_s,mean_cte_m,max_auv_cte_m,"
      "mean_est_error_m,mean_coverage,min_coverage,total_fixes,fix_rate_hz,fix_rate_per_auv_hz,"
      "min_allocation,max_allocation,latency_mean_s,latency_p95_s,delivered,dropped,rounds,max_colors,"
      "improper_colorings,schedule_conflicts,causality_violations\n";
  char buf[768];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%g,%d,%d,%g,%llu,%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,"
                  "%zu,%zu,%zu,%d,%zu,%zu,%zu\n",
                  r.side, r.n_asv, r.n_auv, r.alpha0_deg, static_cast<unsigned long long>(r.seed),
                  r.config_hash.c_str(), r.ok ? "ok" : "failed", clean(r.error).c_str(), r.sim_time, r.mean_cte,
                  r.max_auv_cte, r.mean_est_error, r.mean_coverage, r.min_coverage, r.total_fixes, r.fix_rate,
                  r.fix_rate_per_auv, r.min_allocation, r.max_allocation, r.latency_mean, r.latency_p95, r.delivered,
                  r.dropped, r.rounds, r.max_colors, r.improper_colorings, r.schedule_conflicts,
                  r.causality_violations);
    out += buf;
  }
  return out;
}

std::string aggregate_csv(const std::vector<CellStats>& cells) {
  std::string out =
      "# usblnav-aggregate-csv v1\n"
      "L,n_asv,n_auv,runs,failures,cte_mean_m,cte_std_m,est_error_mean_m,est_error_std_m,coverage_mean,"
      "coverage_std,fix_rate_per_auv_mean_hz,fix_rate_per_auv_std_hz,latency_mean_s,latency_std_s\n";
  char buf[512];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%g,%d,%d,%zu,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", c.side,
                  c.n_asv, c.n_auv, c.runs, c.failures, c.cte_mean, c.cte_std, c.err_mean, c.err_std,
                  c.coverage_mean, c.coverage_std, c.fix_rate_mean, c.fix_rate_std, c.latency_mean, c.latency_std);
    out += buf;
  }
  return out;
}

std::string heatmap_text(const std::vector<CellStats>& cells) {
  std::set<int> auv_counts;
  std::map<std::pair<double, int>, std::map<int, double>> grid;
  for (const auto& c : cells) {
    auv_counts.insert(c.n_auv);
    grid[{c.side, c.n_asv}][c.n_auv] = c.cte_mean;
  }
  std::string out = "# mean CTE (m); rows (L, n_asv), columns n_auv\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%8s %6s", "L", "n_asv");
  out += buf;
  for (const int n : auv_counts) {
    std::snprintf(buf, sizeof buf, " %7d", n);
    out += buf;
  }
  out += '\n';
  for (const auto& [key, row] : grid) {
    std::snprintf(buf, sizeof buf, "%8g %6d", key.first, key.second);
    out += buf;
    for (const int n : auv_counts) {
      const auto it = row.find(n);
      if (it == row.end())
        std::snprintf(buf, sizeof buf, " %7s", "-");
      else
        std::snprintf(buf, sizeof buf, " %7.2f", it->second);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace usblnav
