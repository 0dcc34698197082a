#include "usblnav/acoustic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usblnav {

void UsblNoiseConfig::validate() const {
  if (!(sigma_r >= 0.0)) throw std::invalid_argument("acoustic.sigma_r must be >= 0");
  if (!(sigma_theta >= 0.0)) throw std::invalid_argument("acoustic.sigma_theta_deg must be >= 0");
  if (!(sigma_phi >= 0.0)) throw std::invalid_argument("acoustic.sigma_phi_deg must be >= 0");
  if (!(sound_speed > 0.0)) throw std::invalid_argument("acoustic.sound_speed must be > 0");
  if (!(r_max > 0.0)) throw std::invalid_argument("acoustic.r_max must be > 0");
}

double slant_range(double tau_rtt, double sound_speed) {
  if (tau_rtt < 0.0) throw std::invalid_argument("slant_range: negative round-trip time");
  return sound_speed * tau_rtt / 2.0;
}

UsblFix measure_fix(const Vec3& asv_pos, const Vec3& auv_true_pos, const UsblNoiseConfig& noise,
                    Rng& rng) {
  const Vec3 rel = auv_true_pos - asv_pos;
  const double r = rel.norm();
  if (r > noise.r_max) throw std::invalid_argument("measure_fix: AUV beyond audible range");

  const double theta = std::atan2(rel.y, rel.x);
  const double phi = r > 0.0 ? std::asin(std::clamp(rel.z / r, -1.0, 1.0)) : 0.0;

  const double r_hat = r + gaussian(rng, noise.sigma_r);
  const double theta_hat = theta + gaussian(rng, noise.sigma_theta);
  const double phi_hat = phi + gaussian(rng, noise.sigma_phi);

  UsblFix fix;
  fix.position = asv_pos + r_hat * Vec3{std::cos(phi_hat) * std::cos(theta_hat),
                                        std::cos(phi_hat) * std::sin(theta_hat), std::sin(phi_hat)};
  // First-order spherical-to-Cartesian propagation; floor keeps weights finite.
  fix.horiz_variance = std::max(noise.sigma_r * noise.sigma_r + r * r * noise.sigma_theta * noise.sigma_theta,
                                1e-12);
  return fix;
}

double loss_probability(double r, const LossModelCoefficients& k) {
  const double rc = std::min(r, k.r_clip);
  const double p = k.a * std::exp(k.b * rc) + k.c0 * std::exp(k.d * rc);
  return std::clamp(p, 0.0, 1.0);
}

double total_loss_probability(double r, std::size_t n_auv, const LossModelCoefficients& k) {
  const double extra = n_auv > 0 ? static_cast<double>(n_auv - 1) * k.p_col : 0.0;
  return std::min(loss_probability(r, k) + extra, k.p_cap);
}

std::optional<UsblFix> attempt_fix(const Vec3& asv_pos, const Vec3& auv_true_pos, std::size_t n_auv,
                                   const UsblNoiseConfig& noise, const LossModelCoefficients& k,
                                   Rng& loss_rng, Rng& noise_rng) {
  const double r = distance(asv_pos, auv_true_pos);
  if (r > noise.r_max) return std::nullopt;
  if (uniform01(loss_rng) < total_loss_probability(r, n_auv, k)) return std::nullopt;
  return measure_fix(asv_pos, auv_true_pos, noise, noise_rng);
}

FusedFix fuse_fixes(std::span<const UsblFix> fixes) {
  if (fixes.empty()) throw std::invalid_argument("fuse_fixes: no fixes");
  FusedFix out;
  out.auv_id = fixes.front().auv_id;
  out.measure_tick = fixes.front().measure_tick;
  out.contributing_asv_count = fixes.size();
  if (fixes.size() == 1) {
    out.position = fixes.front().position;
    out.horiz_variance = fixes.front().horiz_variance;
    return out;
  }
  double wsum = 0.0;
  Vec3 acc;
  for (const auto& f : fixes) {
    if (f.auv_id != out.auv_id) throw std::invalid_argument("fuse_fixes: mixed AUV ids");
    const double w = 1.0 / f.horiz_variance;
    acc += w * f.position;
    wsum += w;
  }
  out.position = (1.0 / wsum) * acc;
  out.horiz_variance = 1.0 / wsum;
  return out;
}

}  // namespace usblnav
