// usblnav command-line driver: run, sweep, check-coverage, validate-config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "usblnav/config.hpp"
#include "usblnav/engine.hpp"
#include "usblnav/formation.hpp"
#include "usblnav/report.hpp"
#include "usblnav/sweep.hpp"

namespace fs = std::filesystem;
using namespace usblnav;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

int cmd_validate(const std::string& config_path) {
  const auto cf = load_config(config_path);
  std::printf("%s: ok (config hash %s%s)\n", config_path.c_str(), config_hash(cf.sim).c_str(),
              cf.has_sweep ? ", sweep section present" : "");
  return kOk;
}

int cmd_check_coverage(const std::string& config_path) {
  const auto cf = load_config(config_path);
  const auto& c = cf.sim;
  const auto layout = asv_positions(c.formation());
  const double corner = corner_distance(layout, c.side);
  const bool full = corner <= c.r_hf;
  std::printf("L = %g m, n_asv = %d, R_HF = %g m, R_f = %g m, alpha0 = %g deg\n", c.side, c.n_asv, c.r_hf,
              c.formation().radius(), rad2deg(c.alpha0));
  std::printf("full coverage: %s (corner %.2f m %s %g m)\n", full ? "yes" : "no", corner, full ? "≤" : ">",
              c.r_hf);
  if (const auto rmin = min_formation_radius(c.side, c.r_hf))
    std::printf("min formation radius: %.2f m\n", *rmin);
  else
    std::printf("min formation radius: infeasible (R_HF < L/2)\n");
  std::printf("grid coverage (0.5 m step): %.4f\n", coverage_fraction_grid(layout, c.side, c.r_hf, 0.5));
  return kOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int seeds, bool trace) {
  auto cf = load_config(config_path);
  SimConfig cfg = cf.sim;
  cfg.trace = trace;
  const fs::path root(out_dir);
  fs::create_directories(root);
  const int n = seeds > 0 ? seeds : 1;
  for (int s = 0; s < n; ++s) {
    SimConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(s);
    const fs::path dir = n == 1 ? root : root / ("seed_" + std::to_string(c.seed));
    fs::create_directories(dir);
    spdlog::info("running seed {} ({} s, {} AUV, {} ASV, L = {} m)", c.seed, c.duration, c.n_auv, c.n_asv, c.side);
    const auto rep = run(c);
    write_file(dir / "report.json", report_json(rep, c));
    write_file(dir / "events.log", rep.event_log);
    if (trace) write_file(dir / "trace.log", rep.trace);
    const std::string table = summary_table(rep);
    write_file(dir / "summary.txt", table);
    std::printf("seed %llu\n%s", static_cast<unsigned long long>(c.seed), table.c_str());
    if (rep.protocol.schedule_conflicts || rep.protocol.improper_colorings || rep.causality_violations)
      spdlog::warn("protocol invariant counters non-zero; see report.json");
  }
  spdlog::info("outputs written to {}", root.string());
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int seeds, unsigned parallel) {
  auto cf = load_config(config_path);
  if (!cf.has_sweep) throw ConfigError(config_path + ": no [sweep] section");
  if (seeds > 0) cf.sweep.seeds = seeds;
  const auto cases = expand_grid(cf.sweep);
  spdlog::info("sweep: {} runs on {} thread(s)", cases.size(), parallel);
  const auto rows = run_sweep(cases, parallel);
  const auto cells = aggregate(rows);
  const fs::path root(out_dir);
  fs::create_directories(root);
  write_file(root / "runs.csv", runs_csv(rows));
  write_file(root / "aggregate.csv", aggregate_csv(cells));
  const std::string heat = heatmap_text(cells);
  write_file(root / "heatmap.txt", heat);
  std::printf("%s", heat.c_str());
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.ok ? 0 : 1;
  if (failed) {
    spdlog::error("{} of {} runs failed; see runs.csv", failed, rows.size());
    return kRuntimeError;
  }
  spdlog::info("outputs written to {}", root.string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative surface-anchored acoustic navigation simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // --log-level may follow the subcommand

  std::string config_path;
  std::string out_dir = "out";
  int seeds = 0;
  unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
  bool trace = false;
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto* run_cmd = app.add_subcommand("run", "Run one seeded mission (or --seeds consecutive seeds)");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seeds", seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--trace", trace, "Write per-tick TRACE records");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the [sweep] grid of a config file");
  sweep_cmd->add_option("--config", config_path, "Config file with a [sweep] section")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--seeds", seeds, "Override sweep.seeds")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  auto* cov_cmd = app.add_subcommand("check-coverage", "Formation coverage pre-flight");
  cov_cmd->add_option("--config", config_path, "Config file")->required();

  auto* val_cmd = app.add_subcommand("validate-config", "Parse and validate a config file");
  val_cmd->add_option("--config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  auto logger = spdlog::stderr_color_mt("usblnav");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*run_cmd) return cmd_run(config_path, out_dir, seeds, trace);
    if (*sweep_cmd) return cmd_sweep(config_path, out_dir, seeds, parallel);
    if (*cov_cmd) return cmd_check_coverage(config_path);
    if (*val_cmd) return cmd_validate(config_path);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kRuntimeError;
  }
  return kConfigError;
}
