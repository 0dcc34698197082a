#include "usblnav/nav.hpp"

#include <cmath>
#include <stdexcept>

namespace usblnav {

void NavParams::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("nav.gamma must be in (0, 1]");
  if (!(sigma >= 0.0)) throw std::invalid_argument("nav.sigma must be >= 0");
  if (!(sigma_z >= 0.0)) throw std::invalid_argument("nav.sigma_z must be >= 0");
}

namespace {

Vec2 dr_increment(const NavParams& p, const KinematicInput& in, Rng& rng) {
  const double sq = std::sqrt(in.dt);
  const Vec2 eta{gaussian(rng, p.sigma), gaussian(rng, p.sigma)};
  const Vec2 body = in.dt * in.v_body + in.dt * p.bias + sq * eta;
  return rotate(body, in.psi);
}

}  // namespace

NavState dead_reckon_step(const NavState& s, const KinematicInput& in, Rng& rng) {
  NavState out = s;
  const Vec2 d = dr_increment(s.params, in, rng);
  out.p_imu.x += d.x;
  out.p_imu.y += d.y;
  out.p_fused.x += d.x;
  out.p_fused.y += d.y;
  out.variance += 2.0 * s.params.sigma * s.params.sigma * in.dt;
  return out;
}

NavState dead_reckon_imu_only(const NavState& s, const KinematicInput& in, Rng& rng) {
  NavState out = s;
  const Vec2 d = dr_increment(s.params, in, rng);
  out.p_imu.x += d.x;
  out.p_imu.y += d.y;
  return out;
}

double drift_bound(double t, const Vec2& bias) {
  if (t < 0.0) throw std::invalid_argument("drift_bound: negative time");
  return 0.5 * bias.norm() * t;
}

double error_envelope(double t, const Vec2& bias, double sigma) {
  if (t < 0.0) throw std::invalid_argument("error_envelope: negative time");
  const double b2 = bias.dot(bias);
  return std::sqrt(0.25 * b2 * t * t + sigma * sigma * t);
}

NavState depth_update(const NavState& s, double z_true, Rng& rng) {
  NavState out = s;
  const double z = z_true + gaussian(rng, s.params.sigma_z);
  out.p_imu.z = z;
  out.p_fused.z = z;
  return out;
}

NavState predict(const NavState& s, const KinematicInput& in) {
  NavState out = s;
  const Vec2 d = rotate(in.dt * (in.v_body + s.params.bias), in.psi);
  out.p_fused.x += d.x;
  out.p_fused.y += d.y;
  out.variance += 2.0 * s.params.sigma * s.params.sigma * in.dt;
  return out;
}

NavState correct(const NavState& s, const FusedFix& fix, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("apply_fix: gamma must be in (0, 1]");
  NavState out = s;
  out.p_fused.x += gamma * (fix.position.x - s.p_fused.x);
  out.p_fused.y += gamma * (fix.position.y - s.p_fused.y);
  out.variance = (1.0 - gamma) * s.variance;
  return out;
}

NavState apply_fix(const NavState& s, const FusedFix& fix, const KinematicInput& in, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("apply_fix: gamma must be in (0, 1]");
  return correct(predict(s, in), fix, gamma);
}

}  // namespace usblnav
