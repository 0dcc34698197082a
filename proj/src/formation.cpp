#include "usblnav/formation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace usblnav {

void FormationConfig::validate() const {
  if (n_asv < 1) throw std::invalid_argument("formation.n_asv must be >= 1, got " + std::to_string(n_asv));
  if (!(r_hf > 0.0)) throw std::invalid_argument("formation.r_hf must be > 0");
  if (!(delta_b >= 0.0)) throw std::invalid_argument("formation.delta_b must be >= 0");
  if (!(side > 0.0)) throw std::invalid_argument("formation.L must be > 0");
}

AsvLayout asv_positions(int n_asv, double radius, double alpha0) {
  if (n_asv < 1) throw std::invalid_argument("formation.n_asv must be >= 1, got " + std::to_string(n_asv));
  AsvLayout layout;
  if (n_asv == 1) {
    layout.positions.push_back({0.0, 0.0});
    return layout;
  }
  layout.positions.reserve(static_cast<std::size_t>(n_asv));
  for (int j = 0; j < n_asv; ++j) {
    const double a = alpha0 + 2.0 * kPi * j / n_asv;
    layout.positions.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return layout;
}

AsvLayout asv_positions(const FormationConfig& cfg) {
  cfg.validate();
  return asv_positions(cfg.n_asv, cfg.radius(), cfg.alpha0);
}

double corner_distance(const AsvLayout& layout, double side) {
  if (layout.empty()) throw std::invalid_argument("corner_distance: empty layout");
  const double h = side / 2.0;
  double worst = 0.0;
  for (const Vec2 corner : {Vec2{h, h}, Vec2{-h, h}, Vec2{-h, -h}, Vec2{h, -h}}) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : layout.positions) nearest = std::min(nearest, distance(corner, p));
    worst = std::max(worst, nearest);
  }
  return worst;
}

std::optional<double> min_formation_radius(double side, double r_hf) {
  const double h = side / 2.0;
  if (r_hf < h) return std::nullopt;
  return h - std::sqrt(r_hf * r_hf - h * h);
}

double coverage_fraction_grid(const AsvLayout& layout, double side, double r_hf, double grid_step) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("coverage_fraction_grid: grid_step must be > 0");
  const double h = side / 2.0;
  // Boundary-inclusive: the last sample lands on +L/2 when the step divides L.
  const auto n = static_cast<long>(std::floor(side / grid_step + 1e-9)) + 1;
  const double r2 = r_hf * r_hf;
  long covered = 0;
  for (long i = 0; i < n; ++i) {
    const double x = -h + i * grid_step;
    for (long j = 0; j < n; ++j) {
      const double y = -h + j * grid_step;
      for (const auto& p : layout.positions) {
        const double dx = x - p.x;
        const double dy = y - p.y;
        if (dx * dx + dy * dy <= r2) {
          ++covered;
          break;
        }
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(n * n);
}

}  // namespace usblnav
