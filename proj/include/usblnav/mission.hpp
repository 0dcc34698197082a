#pragma once

#include <cstddef>
#include <vector>

#include "usblnav/geometry.hpp"

namespace usblnav {

/// Direction of the first survey leg in every strip.
enum class FirstLeg { kPositiveX, kNegativeX };

/// One AUV's boustrophedon over its strip.
struct StripPlan {
  std::vector<Vec2> waypoints;
  double y_lo = 0.0;
  double y_hi = 0.0;

  double length() const;
};

/// Equal-width strips in y, one per AUV; AUV 0 owns the lowest-y strip.
struct LawnmowerPlan {
  std::vector<StripPlan> strips;
  double track_spacing = 0.0;
  double depth = 10.0;
};

struct VehicleTruth {
  Vec3 position;
  double yaw = 0.0;
  double speed = 0.0;
};

struct GuidanceConfig {
  double cruise_speed = 0.65;
  double capture_radius = 2.0;
  double max_yaw_rate = 0.5;

  void validate() const;
};

struct Command {
  double speed = 0.0;
  double yaw = 0.0;
};

/// Default spacing: three track gaps per strip (5 m for 4 AUVs over 60 m).
double default_track_spacing(double side, int n_auv);

/// Tracks run along x at y = y_lo + k * spacing (boundary inclusive), visited
/// from the strip's low-y edge upward. Throws when spacing exceeds the strip height.
LawnmowerPlan plan_lawnmower(double side, int n_auv, double track_spacing, double depth = 10.0,
                             FirstLeg first_leg = FirstLeg::kNegativeX);

/// Cuts the waypoint polyline after `max_length` meters (no-op when <= 0 or longer than the plan).
StripPlan truncate_plan(const StripPlan& plan, double max_length);

/// Steers from the *estimated* position toward the current waypoint, advancing
/// `wp_index` on capture. Yaw is slewed at most max_yaw_rate * dt; speed drops
/// to zero once the plan is exhausted.
Command guidance_step(const VehicleTruth& truth, const Vec2& estimate, const StripPlan& plan,
                      std::size_t& wp_index, const GuidanceConfig& cfg, double dt);

/// Unicycle kinematics at fixed depth.
VehicleTruth advance_truth(const VehicleTruth& truth, const Command& cmd, double dt);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Distance from the true position to the nearest planned segment of the strip.
double cross_track_error(const Vec2& true_pos, const StripPlan& plan);

}  // namespace usblnav
