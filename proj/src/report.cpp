#include "usblnav/report.hpp"

#include <cstdio>

#include <json.hpp>

#include "usblnav/config.hpp"

namespace usblnav {

std::string report_json(const MissionReport& rep, const SimConfig& cfg) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "usblnav-report v1";
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["scenario"] = {{"L", cfg.side},
                   {"n_auv", cfg.n_auv},
                   {"n_asv", cfg.n_asv},
                   {"alpha0_deg", rad2deg(cfg.alpha0)},
                   {"duration", cfg.duration},
                   {"tick_rate", cfg.tick_rate}};
  j["ticks"] = rep.ticks;
  j["sim_time_s"] = rep.sim_time;

  ordered_json fleet;
  fleet["mean_cte_m"] = rep.mean_cte();
  fleet["total_fixes"] = rep.total_fixes();
  fleet["fix_rate_hz"] = rep.fix_rate;
  fleet["allocation"] = rep.allocation;
  fleet["latency_mean_s"] = rep.latency_mean;
  fleet["latency_p95_s"] = rep.latency_p95;
  fleet["delivered"] = rep.delivered;
  fleet["dropped"] = rep.dropped;
  fleet["causality_violations"] = rep.causality_violations;
  j["fleet"] = fleet;

  const auto& p = rep.protocol;
  j["protocol"] = {{"rounds", p.rounds},
                   {"broadcasts", p.broadcasts},
                   {"graph_rebuilds", p.graph_rebuilds},
                   {"max_colors", p.max_colors},
                   {"improper_colorings", p.improper_colorings},
                   {"brooks_violations", p.brooks_violations},
                   {"schedule_conflicts", p.schedule_conflicts},
                   {"geometric_conflicts", p.geometric_conflicts},
                   {"ul_slot_violations", p.ul_slot_violations},
                   {"dl_slot_violations", p.dl_slot_violations},
                   {"broadcast_waits", p.broadcast_waits}};

  ordered_json auvs = ordered_json::array();
  for (std::size_t i = 0; i < rep.auv.size(); ++i) {
    const auto& a = rep.auv[i];
    auvs.push_back({{"id", i},
                    {"mean_cte_m", a.mean_cte},
                    {"max_cte_m", a.max_cte},
                    {"mean_est_error_m", a.mean_est_error},
                    {"max_est_error_m", a.max_est_error},
                    {"final_imu_error_m", a.final_imu_error},
                    {"fixes", a.fixes},
                    {"pings", a.pings},
                    {"heard", a.heard},
                    {"coverage", a.coverage},
                    {"distance_m", a.distance},
                    {"mean_fix_interval_s", a.mean_fix_interval},
                    {"max_fix_interval_s", a.max_fix_interval},
                    {"max_innovation_m", a.max_innovation},
                    {"excursion_ticks", a.excursion_ticks},
                    {"plan_complete", a.plan_complete}});
  }
  j["auv"] = auvs;
  return j.dump(2) + "\n";
}

std::string summary_table(const MissionReport& rep) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %7s %8s %8s %8s\n", "AUV", "Fixes", "Cov(%)", "CTE(m)", "Dist(m)");
  out += buf;
  for (std::size_t i = 0; i < rep.auv.size(); ++i) {
    const auto& a = rep.auv[i];
    std::snprintf(buf, sizeof buf, "AUV_%-2zu %7zu %8.0f %8.2f %8.0f\n", i, a.fixes, 100.0 * a.coverage, a.mean_cte,
                  a.distance);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "fleet: %.1f s, fix rate %.3f Hz, latency mean %.3f s / p95 %.3f s, dropped %zu\n",
                rep.sim_time, rep.fix_rate, rep.latency_mean, rep.latency_p95, rep.dropped);
  out += buf;
  return out;
}

}  // namespace usblnav
