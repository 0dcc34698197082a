#include "usblnav/mission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace usblnav {

double StripPlan::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) len += distance(waypoints[i - 1], waypoints[i]);
  return len;
}

void GuidanceConfig::validate() const {
  if (!(cruise_speed > 0.0)) throw std::invalid_argument("guidance.cruise_speed must be > 0");
  if (!(capture_radius > 0.0)) throw std::invalid_argument("guidance.capture_radius must be > 0");
  if (!(max_yaw_rate > 0.0)) throw std::invalid_argument("guidance.max_yaw_rate must be > 0");
}

double default_track_spacing(double side, int n_auv) { return side / n_auv / 3.0; }

LawnmowerPlan plan_lawnmower(double side, int n_auv, double track_spacing, double depth,
                             FirstLeg first_leg) {
  if (n_auv < 1) throw std::invalid_argument("plan_lawnmower: n_auv must be >= 1");
  if (!(side > 0.0)) throw std::invalid_argument("plan_lawnmower: L must be > 0");
  const double height = side / n_auv;
  if (!(track_spacing > 0.0) || track_spacing > height * (1.0 + 1e-9))
    throw std::invalid_argument("plan_lawnmower: track spacing must be in (0, strip height]");

  const double h = side / 2.0;
  const auto n_tracks = static_cast<int>(std::floor(height / track_spacing + 1e-9)) + 1;

  LawnmowerPlan plan;
  plan.track_spacing = track_spacing;
  plan.depth = depth;
  for (int i = 0; i < n_auv; ++i) {
    StripPlan strip;
    strip.y_lo = -h + i * height;
    strip.y_hi = (i + 1 == n_auv) ? h : -h + (i + 1) * height;
    bool positive = first_leg == FirstLeg::kPositiveX;
    for (int k = 0; k < n_tracks; ++k) {
      const double y = std::min(strip.y_lo + k * track_spacing, strip.y_hi);
      const double x0 = positive ? -h : h;
      strip.waypoints.push_back({x0, y});
      strip.waypoints.push_back({-x0, y});
      positive = !positive;
    }
    plan.strips.push_back(std::move(strip));
  }
  return plan;
}

StripPlan truncate_plan(const StripPlan& plan, double max_length) {
  if (max_length <= 0.0 || plan.waypoints.size() < 2) return plan;
  StripPlan out;
  out.y_lo = plan.y_lo;
  out.y_hi = plan.y_hi;
  out.waypoints.push_back(plan.waypoints.front());
  double remaining = max_length;
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
    const Vec2 a = plan.waypoints[i - 1];
    const Vec2 b = plan.waypoints[i];
    const double seg = distance(a, b);
    if (seg >= remaining) {
      if (remaining > 0.0) out.waypoints.push_back(a + (remaining / seg) * (b - a));
      return out;
    }
    out.waypoints.push_back(b);
    remaining -= seg;
  }
  return out;
}

Command guidance_step(const VehicleTruth& truth, const Vec2& estimate, const StripPlan& plan,
                      std::size_t& wp_index, const GuidanceConfig& cfg, double dt) {
  while (wp_index < plan.waypoints.size() &&
         distance(estimate, plan.waypoints[wp_index]) <= cfg.capture_radius)
    ++wp_index;
  if (wp_index >= plan.waypoints.size()) return {0.0, truth.yaw};

  const Vec2 to = plan.waypoints[wp_index] - estimate;
  const double desired = std::atan2(to.y, to.x);
  const double max_turn = cfg.max_yaw_rate * dt;
  const double turn = std::clamp(wrap_angle(desired - truth.yaw), -max_turn, max_turn);
  return {cfg.cruise_speed, wrap_angle(truth.yaw + turn)};
}

VehicleTruth advance_truth(const VehicleTruth& truth, const Command& cmd, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance_truth: dt must be > 0");
  VehicleTruth out = truth;
  out.yaw = cmd.yaw;
  out.speed = std::max(cmd.speed, 0.0);
  out.position.x += out.speed * dt * std::cos(out.yaw);
  out.position.y += out.speed * dt * std::sin(out.yaw);
  return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double cross_track_error(const Vec2& true_pos, const StripPlan& plan) {
  if (plan.waypoints.empty()) throw std::invalid_argument("cross_track_error: empty plan");
  if (plan.waypoints.size() == 1) return distance(true_pos, plan.waypoints.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i)
    best = std::min(best, point_segment_distance(true_pos, plan.waypoints[i - 1], plan.waypoints[i]));
  return best;
}

}  // namespace usblnav
