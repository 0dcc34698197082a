#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "usblnav/nav.hpp"

using namespace usblnav;
using doctest::Approx;

namespace {

NavState quiet_state(Vec2 bias = {0, 0}, double sigma = 0) {
  NavState s;
  s.params.bias = bias;
  s.params.sigma = sigma;
  s.params.sigma_z = 0;
  return s;
}

}  // namespace

TEST_CASE("dead reckoning step geometry") {
  auto rng = derive_rng(1, "imu/0");
  auto s = dead_reckon_step(quiet_state(), {{1, 0}, 0, 1.0 / 30, 10}, rng);
  CHECK(s.p_imu.x == Approx(1.0 / 30));
  CHECK(s.p_imu.y == Approx(0).epsilon(1e-12));
  CHECK(s.p_fused.x == s.p_imu.x);

  s = dead_reckon_step(quiet_state(), {{1, 0}, kPi / 2, 1.0 / 30, 10}, rng);
  CHECK(std::abs(s.p_imu.x) < 1e-12);
  CHECK(s.p_imu.y == Approx(1.0 / 30));
}

TEST_CASE("constant bias integrates linearly") {
  auto rng = derive_rng(1, "imu/0");
  NavState s = quiet_state({0.06, 0.06});
  for (int k = 0; k < 9000; ++k) s = dead_reckon_step(s, {{0, 0}, 0, 1.0 / 30, 10}, rng);
  CHECK(s.p_imu.x == Approx(18.0));
  CHECK(s.p_imu.y == Approx(18.0));
  CHECK(s.p_imu.xy().norm() == Approx(25.456).epsilon(1e-4));
}

TEST_CASE("closed-form drift expressions") {
  CHECK(drift_bound(0, {0.06, 0.06}) == 0);
  CHECK(drift_bound(10, {0.06, 0.06}) == Approx(0.424).epsilon(1e-3));
  CHECK(drift_bound(4.02, {0.06, 0.06}) == Approx(0.1706).epsilon(1e-3));
  CHECK(error_envelope(0, {0.06, 0.06}, 0.027) == 0);
  CHECK(error_envelope(100, {0.06, 0.06}, 0.027) == Approx(4.252).epsilon(1e-3));
  CHECK(error_envelope(1, {0, 0}, 0.027) == Approx(0.027));
  CHECK_THROWS_AS(drift_bound(-1, {}), std::invalid_argument);
}

TEST_CASE("stationary drift matches the full-bias envelope") {
  // RMS of |b t + W(t)| with W a 2D random walk of intensity sigma is
  // sqrt(|b|^2 t^2 + 2 sigma^2 t); the half-bias envelope is 2x smaller.
  const Vec2 b{0.06, 0.06};
  const double sigma = 0.027;
  const int runs = 200;
  double ss = 0;
  for (int r = 0; r < runs; ++r) {
    auto rng = derive_rng(static_cast<std::uint64_t>(r), "imu/0");
    NavState s = quiet_state(b, sigma);
    for (int k = 0; k < 3000; ++k) s = dead_reckon_step(s, {{0, 0}, 0, 1.0 / 30, 0}, rng);
    ss += s.p_imu.xy().dot(s.p_imu.xy());
  }
  const double rms = std::sqrt(ss / runs);
  const double full = std::sqrt(b.dot(b) * 100 * 100 + 2 * sigma * sigma * 100);
  CHECK(rms == Approx(full).epsilon(0.05));
}

TEST_CASE("random walk alone matches sigma sqrt(2t)") {
  const int runs = 400;
  double ss = 0;
  for (int r = 0; r < runs; ++r) {
    auto rng = derive_rng(static_cast<std::uint64_t>(r), "rw");
    NavState s = quiet_state({0, 0}, 0.027);
    for (int k = 0; k < 900; ++k) s = dead_reckon_step(s, {{0, 0}, 0, 1.0 / 30, 0}, rng);
    ss += s.p_imu.xy().dot(s.p_imu.xy());
  }
  CHECK(std::sqrt(ss / runs) == Approx(0.027 * std::sqrt(2 * 30.0)).epsilon(0.1));
}

TEST_CASE("depth replacement is white and unbiased") {
  NavState s;
  auto rng = derive_rng(2, "depth/0");
  const int n = 10000;
  std::vector<double> e(n);
  for (int k = 0; k < n; ++k) {
    s = depth_update(s, 10.0, rng);
    e[k] = s.p_imu.z - 10.0;
    CHECK(s.p_fused.z == s.p_imu.z);
  }
  double m = 0, v = 0, c = 0;
  for (double x : e) m += x;
  m /= n;
  for (int k = 0; k < n; ++k) v += (e[k] - m) * (e[k] - m);
  for (int k = 1; k < n; ++k) c += (e[k] - m) * (e[k - 1] - m);
  CHECK(std::sqrt(v / n) == Approx(0.05).epsilon(0.04));
  CHECK(std::abs(c / v) < 0.05);
  NavState q = quiet_state();
  q = depth_update(q, 10.0, rng);
  CHECK(q.p_imu.z == 10.0);
}

TEST_CASE("fixed-gain correction") {
  NavState s = quiet_state();
  s.p_fused = {10, 0, 10};
  s.p_imu = {3, 3, 10};
  s.variance = 4.0;
  FusedFix f;
  f.position = {12, 0, 9};
  auto out = correct(s, f, 0.9);
  CHECK(out.p_fused.x == Approx(11.8));
  CHECK(out.p_fused.y == 0);
  CHECK(out.p_fused.z == 10);  // depth comes from the pressure sensor only
  CHECK(out.p_imu == s.p_imu);
  CHECK(out.variance == Approx(0.4));

  CHECK(correct(s, f, 1.0).p_fused.x == 12);
  f.position = s.p_fused;
  for (double g : {0.1, 0.5, 1.0}) CHECK(correct(s, f, g).p_fused == s.p_fused);

  CHECK_THROWS_AS(correct(s, f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(correct(s, f, 1.5), std::invalid_argument);
}

TEST_CASE("apply_fix predicts one biased step first") {
  NavState s = quiet_state({0.06, 0.0});
  s.p_fused = {0, 0, 10};
  FusedFix f;
  f.position = {1, 0, 10};
  const KinematicInput in{{0.6, 0}, 0, 0.1, 10};
  const auto out = apply_fix(s, f, in, 0.5);
  const double prior = 0.1 * (0.6 + 0.06);
  CHECK(out.p_fused.x == Approx(prior + 0.5 * (1 - prior)));
  CHECK(out.p_imu == s.p_imu);
}

TEST_CASE("variance proxy shrinks by 1 - gamma at each fix") {
  NavState s = quiet_state({0, 0}, 0.027);
  auto rng = derive_rng(3, "v");
  for (int k = 0; k < 300; ++k) s = dead_reckon_step(s, {{0, 0}, 0, 1.0 / 30, 0}, rng);
  CHECK(s.variance == Approx(2 * 0.027 * 0.027 * 10).epsilon(1e-9));
  FusedFix f;
  const auto before = predict(s, {{0, 0}, 0, 1.0 / 30, 0});
  const auto after = correct(before, f, 0.9);
  CHECK(after.variance == Approx(0.1 * before.variance));
}
