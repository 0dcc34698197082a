#include "usblnav/conflict.hpp"

#include <algorithm>
#include <stdexcept>

namespace usblnav {

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adj_) twice += nb.size();
  return twice / 2;
}

void ConflictGraph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("ConflictGraph: self-loop");
  if (i >= adj_.size() || j >= adj_.size()) throw std::out_of_range("ConflictGraph: vertex out of range");
  if (adjacent(i, j)) return;
  adj_[i].insert(std::upper_bound(adj_[i].begin(), adj_[i].end(), j), j);
  adj_[j].insert(std::upper_bound(adj_[j].begin(), adj_[j].end(), i), i);
}

bool ConflictGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& nb = adj_.at(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::size_t ConflictGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nb : adj_) d = std::max(d, nb.size());
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> ConflictGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < adj_.size(); ++i)
    for (auto j : adj_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::vector<std::size_t> Coloring::group(int g) const {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < color.size(); ++i)
    if (color[i] == g) members.push_back(i);
  return members;
}

bool acoustic_conflict(const Vec2& p_i, const Vec2& p_j, const AsvLayout& layout, double r_hf) {
  return std::any_of(layout.positions.begin(), layout.positions.end(), [&](const Vec2& asv) {
    return distance(p_i, asv) <= r_hf && distance(p_j, asv) <= r_hf;
  });
}

ConflictGraph build_conflict_graph(std::span<const Vec2> auv_positions, const AsvLayout& layout,
                                   double r_hf) {
  ConflictGraph g(auv_positions.size());
  for (std::size_t i = 0; i < auv_positions.size(); ++i)
    for (std::size_t j = i + 1; j < auv_positions.size(); ++j)
      if (acoustic_conflict(auv_positions[i], auv_positions[j], layout, r_hf)) g.add_edge(i, j);
  return g;
}

Coloring greedy_color(const ConflictGraph& g) {
  Coloring c;
  c.color.assign(g.size(), -1);
  std::vector<char> used;
  for (std::size_t i = 0; i < g.size(); ++i) {
    used.assign(g.neighbors(i).size() + 1, 0);
    for (auto j : g.neighbors(i)) {
      const int cj = c.color[j];
      if (cj >= 0 && static_cast<std::size_t>(cj) < used.size()) used[static_cast<std::size_t>(cj)] = 1;
    }
    int first = 0;
    while (used[static_cast<std::size_t>(first)]) ++first;
    c.color[i] = first;
    c.k = std::max(c.k, first + 1);
  }
  return c;
}

bool is_proper(const ConflictGraph& g, const Coloring& c) {
  if (c.color.size() != g.size()) return false;
  for (const auto& [i, j] : g.edges())
    if (c.color[i] == c.color[j]) return false;
  return true;
}

}  // namespace usblnav
