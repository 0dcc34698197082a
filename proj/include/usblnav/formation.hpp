#pragma once

#include <optional>
#include <vector>

#include "usblnav/geometry.hpp"

namespace usblnav {

/// Surface formation parameters. Formation radius is r_hf + delta_b.
struct FormationConfig {
  int n_asv = 1;
  double r_hf = 50.0;     ///< HF uplink range [m]
  double delta_b = 0.0;   ///< clearance buffer [m]
  double alpha0 = 0.0;    ///< formation angle [rad]
  double side = 60.0;     ///< survey side length L [m]

  double radius() const { return r_hf + delta_b; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Station-kept ASV positions on the horizontal plane.
struct AsvLayout {
  std::vector<Vec2> positions;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
};

/// ASVs at the vertices of a regular N-gon of radius R_f about the origin;
/// a single ASV sits at the origin.
AsvLayout asv_positions(const FormationConfig& cfg);

/// Same placement with an explicit radius (used by oracles that vary R_f
/// independently of r_hf).
AsvLayout asv_positions(int n_asv, double radius, double alpha0);

/// Worst-case distance from a survey corner (+-L/2, +-L/2) to its nearest ASV.
double corner_distance(const AsvLayout& layout, double side);

/// Smallest formation radius for which the nearest-axis ASV still reaches the
/// corner: L/2 - sqrt(r_hf^2 - (L/2)^2). Empty when r_hf < L/2, where the
/// closed form does not apply.
std::optional<double> min_formation_radius(double side, double r_hf);

/// Brute-force fraction of a boundary-inclusive grid over [-L/2, L/2]^2 that
/// lies within r_hf of at least one ASV.
double coverage_fraction_grid(const AsvLayout& layout, double side, double r_hf,
                              double grid_step = 0.5);

}  // namespace usblnav
