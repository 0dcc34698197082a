#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "usblnav/engine.hpp"

using namespace usblnav;
using doctest::Approx;

namespace {

SimConfig short_cfg(double duration = 60.0) {
  SimConfig c;
  c.duration = duration;
  return c;
}

// "true=x,y,z" field of every TRACE line.
std::vector<std::string> true_fields(const std::string& trace) {
  std::vector<std::string> out;
  std::istringstream in(trace);
  std::string line;
  while (std::getline(in, line)) {
    const auto a = line.find("true=");
    const auto b = line.find(' ', a);
    out.push_back(line.substr(a, b - a));
  }
  return out;
}

}  // namespace

TEST_CASE("coverage fraction") {
  CHECK(coverage_fraction(10, 10) == 1.0);
  CHECK(coverage_fraction(100, 9) == Approx(0.09));
  CHECK(coverage_fraction(0, 0) == 0.0);
}

TEST_CASE("config validation names the field") {
  SimConfig c;
  c.n_asv = 0;
  try {
    c.validate();
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("n_asv") != std::string::npos);
  }
  c = SimConfig{};
  c.n_auv = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.duration = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SimConfig{};
  c.tick_rate = 10;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_NOTHROW(SimConfig{}.validate());
}

TEST_CASE("zero duration gives an empty report") {
  const auto r = run(short_cfg(0.0));
  CHECK(r.ticks == 0);
  CHECK(r.total_fixes() == 0);
  CHECK(r.auv.size() == 4);
  for (const auto& a : r.auv) CHECK(a.pings == 0);
}

TEST_CASE("same seed gives byte-identical output") {
  auto c = short_cfg(40.0);
  c.trace = true;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.event_log == b.event_log);
  CHECK(a.trace == b.trace);
  CHECK(!a.event_log.empty());
  c.seed = 2;
  CHECK(run(c).event_log != a.event_log);
}

TEST_CASE("baseline: full coverage, fair allocation, causal fixes") {
  const auto r = run(short_cfg(120.0));
  double sum = std::accumulate(r.allocation.begin(), r.allocation.end(), 0.0);
  CHECK(sum == Approx(1.0));
  for (const auto& a : r.auv) {
    CHECK(a.coverage == 1.0);
    CHECK(a.fixes > 0);
    CHECK(a.mean_cte < 1.0);
  }
  for (const double s : r.allocation) CHECK(s == Approx(0.25).epsilon(0.1));
  CHECK(r.causality_violations == 0);
  CHECK(r.protocol.improper_colorings == 0);
  CHECK(r.protocol.schedule_conflicts == 0);
  CHECK(r.protocol.ul_slot_violations == 0);
  CHECK(r.protocol.dl_slot_violations == 0);
  CHECK(r.latency_mean > 0.0);
  CHECK(r.latency_p95 >= r.latency_mean * 0.5);
}

TEST_CASE("acoustic streams do not perturb the truth under truth guidance") {
  auto c = short_cfg(30.0);
  c.trace = true;
  c.truth_guidance = true;
  const auto with = run(c);
  c.usbl_enabled = false;
  const auto without = run(c);
  CHECK(without.total_fixes() == 0);
  CHECK(with.total_fixes() > 0);
  CHECK(true_fields(with.trace) == true_fields(without.trace));
}

TEST_CASE("fixes bound the error that dead reckoning accumulates") {
  const auto r = run(short_cfg(300.0));
  for (const auto& a : r.auv) {
    CHECK(a.final_imu_error > 5.0 * a.mean_est_error);
    CHECK(a.max_est_error < 5.0 * a.max_innovation);
  }
}

TEST_CASE("plan exhaustion ends the run") {
  auto c = short_cfg(300.0);
  c.plan_length = 20.0;
  const auto r = run(c);
  CHECK(r.sim_time < 300.0);
  for (const auto& a : r.auv) CHECK(a.plan_complete);
}
