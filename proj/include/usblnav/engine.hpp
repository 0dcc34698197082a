#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "usblnav/acoustic.hpp"
#include "usblnav/formation.hpp"
#include "usblnav/mission.hpp"
#include "usblnav/nav.hpp"
#include "usblnav/protocol.hpp"

namespace usblnav {

/// Positions the ASVs use when rebuilding the conflict graph.
enum class GraphSource {
  kTruth,         ///< true AUV positions
  kLastFix,       ///< last delivered fix per AUV (initial position before any fix)
};

struct SimConfig {
  double side = 60.0;       ///< L [m]
  int n_auv = 4;
  int n_asv = 1;
  double alpha0 = 0.0;      ///< formation angle [rad]
  double duration = 300.0;  ///< [s]
  double tick_rate = 30.0;  ///< f_t [Hz]
  std::uint64_t seed = 1;

  double r_hf = 50.0;
  double delta_b = 0.0;
  double depth = 10.0;

  UsblNoiseConfig noise;
  LossModelCoefficients loss;
  TimingConfig timing;
  GuidanceConfig guidance;
  NavParams nav;

  double track_spacing = 0.0;  ///< 0 selects default_track_spacing
  FirstLeg first_leg = FirstLeg::kNegativeX;
  double plan_length = 0.0;    ///< per-AUV planned length [m]; 0 keeps the full lawnmower

  GraphSource graph_source = GraphSource::kTruth;
  ContentionMode contention = ContentionMode::kFleet;
  UplinkPacing pacing = UplinkPacing::kMfPaced;
  double asv_jitter = 0.0;     ///< per-tick station-keeping noise std [m]

  bool usbl_enabled = true;
  bool truth_guidance = false; ///< steer from truth instead of the fused estimate
  bool log_events = true;
  bool trace = false;

  FormationConfig formation() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct AuvReport {
  double mean_cte = 0.0;
  double max_cte = 0.0;
  double mean_est_error = 0.0;
  double max_est_error = 0.0;
  double final_imu_error = 0.0;
  std::size_t fixes = 0;           ///< applied fused fixes
  std::size_t pings = 0;
  std::size_t heard = 0;
  double coverage = 0.0;
  double distance = 0.0;
  double mean_fix_interval = 0.0;  ///< [s]; 0 with fewer than two fixes
  double max_fix_interval = 0.0;
  double max_innovation = 0.0;     ///< largest |fix - predicted| over applied fixes
  std::size_t excursion_ticks = 0; ///< ticks with the fused estimate outside the survey square
  bool plan_complete = false;
};

struct MissionReport {
  std::vector<AuvReport> auv;
  Tick ticks = 0;
  double sim_time = 0.0;
  double fix_rate = 0.0;               ///< applied fixes per second, fleet total
  std::vector<double> allocation;      ///< per-AUV share of applied fixes
  double latency_mean = 0.0;
  double latency_p95 = 0.0;
  std::size_t delivered = 0;
  std::size_t dropped = 0;
  std::size_t causality_violations = 0;
  ProtocolStats protocol;
  std::string event_log;
  std::string trace;

  std::size_t total_fixes() const;
  double mean_cte() const;
};

/// heard / pings, 0 when there were no pings.
double coverage_fraction(std::size_t pings, std::size_t heard);

MissionReport run(const SimConfig& cfg);

}  // namespace usblnav
