#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "usblnav/geometry.hpp"
#include "usblnav/rng.hpp"

namespace usblnav {

/// USBL measurement noise. Angles in radians.
struct UsblNoiseConfig {
  double sigma_r = 0.1;
  double sigma_theta = deg2rad(0.5);
  double sigma_phi = deg2rad(0.5);
  double sound_speed = kSoundSpeed;
  double r_max = 50.0;  ///< HF audibility cutoff, equal to r_hf

  void validate() const;
};

/// Fit coefficients of the range-dependent fix-loss curve plus the
/// contention term and cap.
struct LossModelCoefficients {
  double a = -6.070;
  double b = 2.12e-3;
  double c0 = 5.987;
  double d = 2.25e-3;
  double r_clip = 800.0;
  double p_col = 0.05;
  double p_cap = 0.999;
};

struct UsblFix {
  std::size_t auv_id = 0;
  std::size_t asv_id = 0;
  Vec3 position;
  double horiz_variance = 0.0;  ///< per-axis horizontal variance proxy [m^2]
  Tick measure_tick = 0;
};

struct FusedFix {
  std::size_t auv_id = 0;
  Vec3 position;
  double horiz_variance = 0.0;
  std::size_t contributing_asv_count = 0;
  Tick measure_tick = 0;
};

/// r = c * tau / 2.
double slant_range(double tau_rtt, double sound_speed = kSoundSpeed);

/// Perturbs range/azimuth/elevation of the true relative vector and rebuilds
/// a world-frame fix. Throws std::invalid_argument when the AUV is beyond r_max.
UsblFix measure_fix(const Vec3& asv_pos, const Vec3& auv_true_pos, const UsblNoiseConfig& noise,
                    Rng& rng);

/// Range-dependent loss probability, clamped to [0, 1].
double loss_probability(double r, const LossModelCoefficients& k = {});

/// Range loss plus (n_auv - 1) * p_col, capped at p_cap.
double total_loss_probability(double r, std::size_t n_auv, const LossModelCoefficients& k = {});

/// One acoustic path. `loss_rng` supplies the single uniform draw; `noise_rng`
/// feeds measure_fix. Returns nullopt when out of range or lost.
std::optional<UsblFix> attempt_fix(const Vec3& asv_pos, const Vec3& auv_true_pos, std::size_t n_auv,
                                   const UsblNoiseConfig& noise, const LossModelCoefficients& k,
                                   Rng& loss_rng, Rng& noise_rng);

/// Inverse-variance weighted fusion of simultaneous fixes of one AUV.
FusedFix fuse_fixes(std::span<const UsblFix> fixes);

}  // namespace usblnav
