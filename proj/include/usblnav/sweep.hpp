#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "usblnav/config.hpp"
#include "usblnav/engine.hpp"

namespace usblnav {

/// One (configuration, seed) point of the grid.
struct SweepCase {
  SimConfig cfg;
  double alpha0_deg = 0.0;
};

/// Scalars kept from one run.
struct SweepRow {
  double side = 0.0;
  int n_auv = 0;
  int n_asv = 0;
  double alpha0_deg = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;
  bool ok = true;
  std::string error;

  double sim_time = 0.0;
  double mean_cte = 0.0;
  double max_auv_cte = 0.0;
  double mean_est_error = 0.0;
  double mean_coverage = 0.0;
  double min_coverage = 0.0;
  std::size_t total_fixes = 0;
  double fix_rate = 0.0;
  double fix_rate_per_auv = 0.0;
  double min_allocation = 0.0;
  double max_allocation = 0.0;
  double latency_mean = 0.0;
  double latency_p95 = 0.0;
  std::size_t delivered = 0;
  std::size_t dropped = 0;
  std::size_t rounds = 0;
  int max_colors = 0;
  std::size_t improper_colorings = 0;
  std::size_t schedule_conflicts = 0;
  std::size_t causality_violations = 0;
};

/// Cross product L x n_asv x n_auv x alpha0 x seed, in that nesting order.
/// With collapse_angles, n_asv == 1 cells use only the first angle.
std::vector<SweepCase> expand_grid(const SweepSpec& spec);

SweepRow summarize(const SweepCase& c, const MissionReport& rep);

/// Runs every case on up to `parallelism` threads. Row i always belongs to
/// case i; a failing run yields ok == false with the message and does not
/// stop the sweep.
std::vector<SweepRow> run_sweep(const std::vector<SweepCase>& cases, unsigned parallelism);

/// Mean and sample std over seeds and angles of one (L, n_asv, n_auv) cell.
struct CellStats {
  double side = 0.0;
  int n_asv = 0;
  int n_auv = 0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double cte_mean = 0.0, cte_std = 0.0;
  double err_mean = 0.0, err_std = 0.0;
  double coverage_mean = 0.0, coverage_std = 0.0;
  double fix_rate_mean = 0.0, fix_rate_std = 0.0;  ///< per AUV
  double latency_mean = 0.0, latency_std = 0.0;
};

/// Cells sorted by (L, n_asv, n_auv); failed rows are counted but not averaged.
std::vector<CellStats> aggregate(const std::vector<SweepRow>& rows);

std::string runs_csv(const std::vector<SweepRow>& rows);
std::string aggregate_csv(const std::vector<CellStats>& cells);
/// Mean CTE table: one line per (L, n_asv), one column per n_auv.
std::string heatmap_text(const std::vector<CellStats>& cells);

}  // namespace usblnav
