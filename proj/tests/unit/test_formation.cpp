#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <random>

#include "usblnav/formation.hpp"

using namespace usblnav;
using doctest::Approx;

namespace {

// Independent oracle: worst corner of the nearest-ASV distance, written out longhand.
double corner_oracle(const std::vector<Vec2>& asv, double L) {
  const double h = L / 2;
  const double cx[4] = {h, -h, -h, h};
  const double cy[4] = {h, h, -h, -h};
  double worst = 0;
  for (int c = 0; c < 4; ++c) {
    double best = std::numeric_limits<double>::max();
    for (const auto& p : asv) best = std::min(best, std::sqrt((cx[c] - p.x) * (cx[c] - p.x) + (cy[c] - p.y) * (cy[c] - p.y)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("single ASV sits at the origin") {
  for (double r : {0.0, 10.0, 50.0}) {
    const auto l = asv_positions(1, r, 1.2);
    REQUIRE(l.size() == 1);
    CHECK(l.positions[0] == Vec2{0, 0});
  }
}

TEST_CASE("N-gon vertex positions") {
  const auto l3 = asv_positions(3, 50, 0);
  CHECK(l3.positions[0].x == Approx(50));
  CHECK(l3.positions[0].y == Approx(0));
  CHECK(l3.positions[1].x == Approx(-25));
  CHECK(l3.positions[1].y == Approx(43.301).epsilon(1e-4));
  CHECK(l3.positions[2].x == Approx(-25));
  CHECK(l3.positions[2].y == Approx(-43.301).epsilon(1e-4));

  const auto l2 = asv_positions(2, 50, kPi / 6);
  CHECK(l2.positions[0].x == Approx(43.301).epsilon(1e-4));
  CHECK(l2.positions[0].y == Approx(25));
  CHECK(l2.positions[1].x == Approx(-43.301).epsilon(1e-4));
  CHECK(l2.positions[1].y == Approx(-25));
}

TEST_CASE("N-gon is equiradial with uniform angular spacing") {
  for (int n = 2; n <= 8; ++n) {
    const auto l = asv_positions(n, 37.5, 0.3);
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs(l.positions[j].norm() - 37.5) < 1e-9);
      const auto& a = l.positions[j];
      const auto& b = l.positions[(j + 1) % n];
      const double gap = wrap_angle(std::atan2(b.y, b.x) - std::atan2(a.y, a.x));
      CHECK(std::abs(wrap_angle(gap - 2 * kPi / n)) < 1e-9);
    }
  }
}

TEST_CASE("formation config validation names the field") {
  FormationConfig c;
  c.n_asv = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_asv"), std::invalid_argument);
  CHECK_THROWS_AS(asv_positions(c), std::invalid_argument);
  c = {};
  c.r_hf = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("r_hf"), std::invalid_argument);
  c = {};
  c.delta_b = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.delta_b = 7;
  CHECK(c.radius() == 57);
}

TEST_CASE("corner distance") {
  CHECK(corner_distance(asv_positions(1, 0, 0), 140) == Approx(98.995).epsilon(1e-5));
  CHECK(corner_distance(asv_positions(1, 0, 0), 60) == Approx(30 * std::sqrt(2.0)));
  // Three ASVs at R_f = 50: the brute-force oracle binds at (70, +-70).
  const auto l3 = asv_positions(3, 50, 0);
  const double oracle = corner_oracle(l3.positions, 140);
  CHECK(corner_distance(l3, 140) == Approx(oracle));
  CHECK(oracle == Approx(std::hypot(20.0, 70.0)));
  CHECK_THROWS_AS(corner_distance(AsvLayout{}, 10), std::invalid_argument);
}

TEST_CASE("corner distance matches the oracle on random layouts") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(u(rng) * 5);
    const double L = 20 + 180 * u(rng);
    const auto l = asv_positions(n, 80 * u(rng), 2 * kPi * u(rng));
    CHECK(corner_distance(l, L) == Approx(corner_oracle(l.positions, L)));
    // Full turn of the formation angle is an exact symmetry.
    const auto l_rot = asv_positions(n, l.positions[0].norm(), std::atan2(l.positions[0].y, l.positions[0].x) + 2 * kPi);
    CHECK(corner_distance(l_rot, L) == Approx(corner_distance(l, L)));
  }
}

TEST_CASE("minimum formation radius") {
  REQUIRE(min_formation_radius(60, 50));
  CHECK(*min_formation_radius(60, 50) == Approx(-10));
  REQUIRE(min_formation_radius(100, 50));
  CHECK(*min_formation_radius(100, 50) == Approx(50));
  CHECK_FALSE(min_formation_radius(140, 50));
}

TEST_CASE("grid coverage oracle") {
  const auto one = asv_positions(1, 0, 0);
  CHECK(coverage_fraction_grid(one, 60, 50, 0.5) == 1.0);
  const double disc = kPi * 50 * 50 / (140.0 * 140.0);
  CHECK(std::abs(coverage_fraction_grid(one, 140, 50, 0.5) - disc) < 0.005);
  // Degenerate square of one grid point.
  CHECK(coverage_fraction_grid(one, 0.1, 1.0, 0.5) == 1.0);
  CHECK_THROWS_AS(coverage_fraction_grid(one, 60, 50, 0), std::invalid_argument);
  const double f = coverage_fraction_grid(asv_positions(3, 50, 0), 140, 50, 1.0);
  CHECK(f > 0.0);
  CHECK(f <= 1.0);
}
