#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "usblnav/config.hpp"
#include "usblnav/conflict.hpp"
#include "usblnav/engine.hpp"
#include "usblnav/formation.hpp"
#include "usblnav/nav.hpp"
#include "usblnav/protocol.hpp"
#include "usblnav/report.hpp"
#include "usblnav/sweep.hpp"

namespace py = pybind11;
using namespace usblnav;

namespace {

std::vector<Vec2> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

std::vector<std::pair<double, double>> from_points(const std::vector<Vec2>& pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

}  // namespace

PYBIND11_MODULE(_usblnav, m) {
  m.doc() = "Cooperative surface-anchored acoustic navigation simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  // formation
  m.def(
      "asv_positions",
      [](int n_asv, double radius, double alpha0) { return from_points(asv_positions(n_asv, radius, alpha0).positions); },
      py::arg("n_asv"), py::arg("radius"), py::arg("alpha0") = 0.0);
  m.def(
      "corner_distance",
      [](const std::vector<std::pair<double, double>>& asv, double side) {
        return corner_distance(AsvLayout{to_points(asv)}, side);
      },
      py::arg("asv"), py::arg("L"));
  m.def("min_formation_radius", &min_formation_radius, py::arg("L"), py::arg("r_hf"));
  m.def(
      "coverage_fraction_grid",
      [](const std::vector<std::pair<double, double>>& asv, double side, double r_hf, double step) {
        return coverage_fraction_grid(AsvLayout{to_points(asv)}, side, r_hf, step);
      },
      py::arg("asv"), py::arg("L"), py::arg("r_hf"), py::arg("grid_step") = 0.5);

  // conflict graph and colouring
  m.def(
      "greedy_coloring",
      [](const std::vector<std::pair<double, double>>& auv, const std::vector<std::pair<double, double>>& asv,
         double r_hf) {
        const auto pts = to_points(auv);
        const auto g = build_conflict_graph(pts, AsvLayout{to_points(asv)}, r_hf);
        const auto c = greedy_color(g);
        return py::dict(py::arg("colors") = c.color, py::arg("k") = c.k, py::arg("edges") = g.edges(),
                        py::arg("max_degree") = g.max_degree(), py::arg("proper") = is_proper(g, c));
      },
      py::arg("auv"), py::arg("asv"), py::arg("r_hf"),
      "Builds the acoustic conflict graph and returns its first-fit colouring.");

  // timing
  m.def(
      "uplink_slot_duration",
      [](double side, double tau) { return uplink_slot_duration(side, tau, TimingConfig{}); }, py::arg("L"),
      py::arg("tau_ot_max"));
  m.def(
      "downlink_slot_duration",
      [](double side, double t_tx) { return downlink_slot_duration(side, t_tx, TimingConfig{}); }, py::arg("L"),
      py::arg("t_tx"));
  m.def(
      "tx_duration", [](int k_fix) { return tx_duration(payload_bytes(k_fix, TimingConfig{}), TimingConfig{}); },
      py::arg("k_fix"), "Downlink transmission time for a payload of k_fix fixes.");
  m.def("next_group_start", &next_group_start, py::arg("k_start"), py::arg("t_ul"), py::arg("tick_rate") = 30.0);

  // nav
  m.def(
      "error_envelope", [](double t, double bx, double by, double sigma) { return error_envelope(t, {bx, by}, sigma); },
      py::arg("t"), py::arg("bias_x") = 0.06, py::arg("bias_y") = 0.06, py::arg("sigma") = 0.027);

  // config + engine
  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("L", &SimConfig::side)
      .def_readwrite("n_auv", &SimConfig::n_auv)
      .def_readwrite("n_asv", &SimConfig::n_asv)
      .def_readwrite("alpha0", &SimConfig::alpha0)
      .def_readwrite("duration", &SimConfig::duration)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("r_hf", &SimConfig::r_hf)
      .def_readwrite("delta_b", &SimConfig::delta_b)
      .def_readwrite("plan_length", &SimConfig::plan_length)
      .def_readwrite("track_spacing", &SimConfig::track_spacing)
      .def_readwrite("usbl_enabled", &SimConfig::usbl_enabled)
      .def_readwrite("truth_guidance", &SimConfig::truth_guidance)
      .def_readwrite("log_events", &SimConfig::log_events)
      .def_readwrite("trace", &SimConfig::trace)
      .def("validate", &SimConfig::validate)
      .def("to_ini", [](const SimConfig& c) { return to_ini(c); })
      .def("config_hash", [](const SimConfig& c) { return config_hash(c); });

  m.def(
      "parse_config", [](const std::string& text) { return parse_config(text).sim; }, py::arg("text"));
  m.def(
      "load_config", [](const std::string& path) { return load_config(path).sim; }, py::arg("path"));

  py::class_<AuvReport>(m, "AuvReport")
      .def_readonly("mean_cte", &AuvReport::mean_cte)
      .def_readonly("mean_est_error", &AuvReport::mean_est_error)
      .def_readonly("fixes", &AuvReport::fixes)
      .def_readonly("pings", &AuvReport::pings)
      .def_readonly("heard", &AuvReport::heard)
      .def_readonly("coverage", &AuvReport::coverage)
      .def_readonly("distance", &AuvReport::distance)
      .def_readonly("mean_fix_interval", &AuvReport::mean_fix_interval)
      .def_readonly("max_fix_interval", &AuvReport::max_fix_interval);

  py::class_<MissionReport>(m, "MissionReport")
      .def_readonly("auv", &MissionReport::auv)
      .def_readonly("ticks", &MissionReport::ticks)
      .def_readonly("sim_time", &MissionReport::sim_time)
      .def_readonly("fix_rate", &MissionReport::fix_rate)
      .def_readonly("allocation", &MissionReport::allocation)
      .def_readonly("latency_mean", &MissionReport::latency_mean)
      .def_readonly("latency_p95", &MissionReport::latency_p95)
      .def_readonly("dropped", &MissionReport::dropped)
      .def_readonly("event_log", &MissionReport::event_log)
      .def_readonly("trace", &MissionReport::trace)
      .def_property_readonly("mean_cte", &MissionReport::mean_cte)
      .def_property_readonly("total_fixes", &MissionReport::total_fixes)
      .def("summary", [](const MissionReport& r) { return summary_table(r); })
      .def("to_json", [](const MissionReport& r, const SimConfig& c) { return report_json(r, c); });

  m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>(),
        "Runs one seeded mission and returns its MissionReport.");

  m.def(
      "sweep_csv",
      [](const std::string& text, unsigned parallel) {
        const auto cf = parse_config(text);
        if (!cf.has_sweep) throw ConfigError("<config>: no [sweep] section");
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(expand_grid(cf.sweep), parallel);
        }
        return py::make_tuple(runs_csv(rows), aggregate_csv(aggregate(rows)));
      },
      py::arg("config_text"), py::arg("parallel") = 1,
      "Runs the [sweep] grid of a config text; returns (runs_csv, aggregate_csv).");
}
