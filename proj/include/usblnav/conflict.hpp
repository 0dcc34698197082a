#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "usblnav/formation.hpp"
#include "usblnav/geometry.hpp"

namespace usblnav {

/// Undirected acoustic conflict graph over AUV indices, adjacency-list form.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::size_t n) : adj_(n) {}

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const;

  /// Adds edge {i, j}; self-loops and duplicates are rejected/ignored.
  void add_edge(std::size_t i, std::size_t j);
  bool adjacent(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_.at(i); }
  std::size_t max_degree() const;

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

 private:
  std::vector<std::vector<std::size_t>> adj_;
};

/// Per-vertex colour classes; vertices sharing a colour ping in the same slot.
struct Coloring {
  std::vector<int> color;
  int k = 0;

  /// Members of colour class g in ascending index order.
  std::vector<std::size_t> group(int g) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// True when some ASV lies within r_hf of both AUVs.
bool acoustic_conflict(const Vec2& p_i, const Vec2& p_j, const AsvLayout& layout, double r_hf);

ConflictGraph build_conflict_graph(std::span<const Vec2> auv_positions, const AsvLayout& layout,
                                   double r_hf);

/// First-fit colouring in ascending vertex order.
Coloring greedy_color(const ConflictGraph& g);

/// True when no edge joins two vertices of the same colour.
bool is_proper(const ConflictGraph& g, const Coloring& c);

}  // namespace usblnav
