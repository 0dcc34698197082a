#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "usblnav/acoustic.hpp"

using namespace usblnav;
using doctest::Approx;

TEST_CASE("slant range") {
  CHECK(slant_range(0, 1500) == 0);
  CHECK(slant_range(0.1, 1500) == Approx(75));
  CHECK(slant_range(1.0, 1500) == Approx(750));
  CHECK_THROWS_AS(slant_range(-1, 1500), std::invalid_argument);
}

TEST_CASE("noiseless fix is the identity") {
  UsblNoiseConfig n;
  n.sigma_r = n.sigma_theta = n.sigma_phi = 0;
  auto rng = derive_rng(1, "t");
  for (const Vec3 auv : {Vec3{10, -3, 10}, Vec3{-30, 25, 10}, Vec3{0, 0, 10}, Vec3{1e-3, 0, 0}}) {
    const auto f = measure_fix({4, -2, 0}, auv, n, rng);
    CHECK(distance(f.position, auv) < 1e-9);
    CHECK(f.horiz_variance > 0);
  }
  CHECK_THROWS_AS(measure_fix({0, 0, 0}, {60, 0, 0}, n, rng), std::invalid_argument);
}

TEST_CASE("cross-range spread follows r * sigma_theta") {
  UsblNoiseConfig n;
  n.sigma_r = 0;
  n.sigma_phi = 0;
  n.r_max = 200;
  auto rng = derive_rng(3, "xr");
  double ss = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const auto f = measure_fix({0, 0, 0}, {100, 0, -10}, n, rng);
    ss += f.position.y * f.position.y;
  }
  const double r = std::hypot(100.0, 10.0);
  const double expected = r * std::cos(std::asin(-10 / r)) * n.sigma_theta;
  CHECK(std::sqrt(ss / trials) == Approx(expected).epsilon(0.10));
  CHECK(std::sqrt(ss / trials) == Approx(0.877).epsilon(0.10));
}

TEST_CASE("along-range spread follows sigma_r") {
  UsblNoiseConfig n;
  n.sigma_theta = n.sigma_phi = 0;
  auto rng = derive_rng(4, "ar");
  const Vec3 truth{50, 0, -10};
  const double r = truth.norm();
  double ss = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    n.r_max = 60;
    const auto f = measure_fix({0, 0, 0}, truth, n, rng);
    const double e = f.position.norm() - r;
    ss += e * e;
  }
  CHECK(std::sqrt(ss / trials) == Approx(0.1).epsilon(0.10));
}

TEST_CASE("loss probability") {
  CHECK(loss_probability(0) == 0.0);
  CHECK(loss_probability(400) == Approx(0.553).epsilon(0.002));
  CHECK(loss_probability(900) == loss_probability(800));
  CHECK(loss_probability(900) == 1.0);
  double prev = 0;
  for (double r = 0; r <= 800; r += 5) {
    const double p = loss_probability(r);
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(total_loss_probability(50, 4) == Approx(0.15));
  CHECK(total_loss_probability(50, 1) == 0.0);
  CHECK(total_loss_probability(800, 1) == Approx(0.999));
  for (std::size_t n = 1; n < 40; ++n)
    for (double r = 0; r < 900; r += 50) {
      CHECK(total_loss_probability(r, n) <= 0.999);
      CHECK(total_loss_probability(r, n) >= std::min(loss_probability(r), 0.999));
    }
}

TEST_CASE("attempt_fix loss rate and range cutoff") {
  UsblNoiseConfig n;
  auto lr = derive_rng(5, "loss");
  auto nr = derive_rng(5, "noise");
  CHECK_FALSE(attempt_fix({0, 0, 0}, {60, 0, 0}, 1, n, {}, lr, nr));
  CHECK(attempt_fix({0, 0, 0}, {10, 0, 0}, 1, n, {}, lr, nr));
  int lost = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) lost += attempt_fix({0, 0, 0}, {50, 0, 0}, 4, n, {}, lr, nr) ? 0 : 1;
  CHECK(static_cast<double>(lost) / trials == Approx(0.15).epsilon(0.01 / 0.15));
}

TEST_CASE("inverse-variance fusion") {
  UsblFix a, b;
  a.position = {1, 0, 0};
  b.position = {3, 0, 0};
  a.horiz_variance = b.horiz_variance = 1.0;
  std::vector<UsblFix> two{a, b};
  auto f = fuse_fixes(two);
  CHECK(f.position.x == Approx(2));
  CHECK(f.horiz_variance == Approx(0.5));
  CHECK(f.contributing_asv_count == 2);

  a.position = {0, 0, 0};
  b.horiz_variance = 0.5;
  two = {a, b};
  f = fuse_fixes(two);
  CHECK(f.position.x == Approx(2.0));
  CHECK(f.horiz_variance == Approx(1.0 / 3));
  CHECK(f.horiz_variance <= std::min(a.horiz_variance, b.horiz_variance));

  std::vector<UsblFix> one{a};
  f = fuse_fixes(one);
  CHECK(f.position == a.position);
  CHECK(f.contributing_asv_count == 1);

  CHECK_THROWS_AS(fuse_fixes(std::vector<UsblFix>{}), std::invalid_argument);
  b.auv_id = 3;
  CHECK_THROWS_AS(fuse_fixes(std::vector<UsblFix>{a, b}), std::invalid_argument);
}
