#include <doctest.h>

#include <string>

#include "usblnav/config.hpp"
#include "usblnav/sweep.hpp"

using namespace usblnav;
using doctest::Approx;

TEST_CASE("grid expansion") {
  SweepSpec s;
  CHECK(expand_grid(s).size() == 1);

  s.side = {60, 100, 140};
  s.n_asv = {1, 2, 3};
  s.n_auv = {1, 2, 3, 4, 5, 6, 7, 8};
  s.alpha0_deg = {0, 30, 60, 90};
  s.seeds = 20;
  s.collapse_angles = false;
  CHECK(expand_grid(s).size() == 5760);
  s.collapse_angles = true;
  CHECK(expand_grid(s).size() == 3 * 8 * 20 * (1 + 4 + 4));

  s = SweepSpec{};
  s.side = {60, 140};
  s.n_asv = {1, 3};
  s.alpha0_deg = {0, 30};
  s.seeds = 2;
  s.base.seed = 5;
  const auto cases = expand_grid(s);
  REQUIRE(cases.size() == 12);
  CHECK(cases[0].cfg.side == 60);
  CHECK(cases[0].cfg.seed == 5);
  CHECK(cases[1].cfg.seed == 6);
  CHECK(cases[2].cfg.n_asv == 3);
  CHECK(cases[4].alpha0_deg == 30);
  CHECK(cases[4].cfg.alpha0 == Approx(deg2rad(30)));
  CHECK(cases[6].cfg.side == 140);
  for (const auto& c : cases) CHECK_FALSE(c.cfg.log_events);
}

TEST_CASE("parallel and serial sweeps agree") {
  SweepSpec s;
  s.side = {60, 140};
  s.n_auv = {2, 3};
  s.seeds = 2;
  s.base.duration = 20;
  const auto cases = expand_grid(s);
  const auto a = run_sweep(cases, 1);
  const auto b = run_sweep(cases, 8);
  CHECK(runs_csv(a) == runs_csv(b));
  CHECK(aggregate_csv(aggregate(a)) == aggregate_csv(aggregate(b)));
  CHECK(runs_csv(a).rfind("# usblnav-sweep-csv v1\n", 0) == 0);
}

TEST_CASE("a failing case is reported, not fatal") {
  SweepSpec s;
  s.n_auv = {2};
  s.base.duration = 5;
  auto cases = expand_grid(s);
  cases.push_back(cases[0]);
  cases[1].cfg.n_auv = 0;
  const auto rows = run_sweep(cases, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].error.find("n_auv") != std::string::npos);
  const auto cells = aggregate(rows);
  std::size_t failures = 0;
  for (const auto& c : cells) failures += c.failures;
  CHECK(failures == 1);
}

TEST_CASE("aggregation statistics") {
  std::vector<SweepRow> rows(3);
  const double cte[] = {1.0, 2.0, 3.0};
  for (int i = 0; i < 3; ++i) {
    rows[i].side = 60;
    rows[i].n_asv = 1;
    rows[i].n_auv = 4;
    rows[i].mean_cte = cte[i];
    rows[i].mean_coverage = 1.0;
  }
  const auto cells = aggregate(rows);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].runs == 3);
  CHECK(cells[0].cte_mean == Approx(2.0));
  CHECK(cells[0].cte_std == Approx(1.0));
  CHECK(cells[0].coverage_std == 0.0);
  const auto heat = heatmap_text(cells);
  CHECK(heat.find("2.00") != std::string::npos);
}
