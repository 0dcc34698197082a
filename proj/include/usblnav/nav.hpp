#pragma once

#include "usblnav/acoustic.hpp"
#include "usblnav/geometry.hpp"
#include "usblnav/rng.hpp"

namespace usblnav {

/// Dead-reckoning error model and fix gain.
struct NavParams {
  Vec2 bias{0.06, 0.06};  ///< constant body-frame velocity bias [m/s]
  double sigma = 0.027;   ///< random-walk intensity [m/sqrt(s)]
  double sigma_z = 0.05;  ///< pressure-depth noise [m]
  double gamma = 0.90;    ///< fixed correction gain in (0, 1]

  void validate() const;
};

/// Per-AUV navigation state.
struct NavState {
  Vec3 p_imu;    ///< pure dead reckoning, never corrected
  Vec3 p_fused;  ///< dead reckoning corrected by delivered fixes
  /// Scalar horizontal variance proxy; grows with the random walk and shrinks
  /// by (1 - gamma) at each fix. Diagnostic only.
  double variance = 0.0;
  NavParams params;
};

struct KinematicInput {
  Vec2 v_body;          ///< body-frame horizontal velocity [m/s]
  double psi = 0.0;     ///< yaw [rad]
  double dt = 1.0 / 30; ///< step [s]
  double z_true = 0.0;  ///< true depth [m]
};

/// One strapdown step: p += R(psi) (v dt + b dt + eta sqrt(dt)), eta ~ N(0, sigma^2 I).
/// The same increment is applied to p_imu and p_fused.
NavState dead_reckon_step(const NavState& s, const KinematicInput& in, Rng& rng);

/// As dead_reckon_step, but only p_imu moves (used on ticks where p_fused is
/// advanced by the noise-free predict of apply_fix instead).
NavState dead_reckon_imu_only(const NavState& s, const KinematicInput& in, Rng& rng);

/// Half-bias linear drift bound: 0.5 * |b| * t.
double drift_bound(double t, const Vec2& bias);

/// RMS envelope sqrt(|b|^2 t^2 / 4 + sigma^2 t).
double error_envelope(double t, const Vec2& bias, double sigma);

/// Replaces both depth components with a noisy pressure reading.
NavState depth_update(const NavState& s, double z_true, Rng& rng);

/// Noise-free biased kinematic step on p_fused only.
NavState predict(const NavState& s, const KinematicInput& in);

/// p_fused.xy += gamma * (fix.xy - p_fused.xy). Throws when gamma is outside (0, 1].
NavState correct(const NavState& s, const FusedFix& fix, double gamma);

/// predict followed by correct.
NavState apply_fix(const NavState& s, const FusedFix& fix, const KinematicInput& in, double gamma);

}  // namespace usblnav
