#include <doctest.h>

#include <stdexcept>

#include <random>

#include "usblnav/conflict.hpp"

using namespace usblnav;

TEST_CASE("graph basics") {
  ConflictGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.max_degree() == 1);
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
}

TEST_CASE("acoustic conflict needs one ASV hearing both") {
  const AsvLayout one{{{0, 0}}};
  CHECK(acoustic_conflict({10, 0}, {-10, 0}, one, 50));
  CHECK_FALSE(acoustic_conflict({60, 0}, {-10, 0}, one, 50));
  const AsvLayout two{{{-40, 0}, {40, 0}}};
  // Each AUV is heard, but by different ASVs.
  CHECK_FALSE(acoustic_conflict({-70, 0}, {70, 0}, two, 35));
}

TEST_CASE("single ASV hearing everyone gives a complete graph") {
  const std::vector<Vec2> auv = {{-20, -20}, {20, -20}, {-20, 20}, {20, 20}};
  const auto g = build_conflict_graph(auv, AsvLayout{{{0, 0}}}, 50);
  CHECK(g.edge_count() == 6);
  const auto c = greedy_color(g);
  CHECK(c.k == 4);
  CHECK(c.color == std::vector<int>{0, 1, 2, 3});
  CHECK(is_proper(g, c));
  CHECK(c.group(2) == std::vector<std::size_t>{2});
}

TEST_CASE("unheard AUVs share the first colour") {
  const std::vector<Vec2> auv = {{-70, -70}, {70, 70}, {0, 0}};
  const auto g = build_conflict_graph(auv, AsvLayout{{{0, 0}}}, 50);
  CHECK(g.edge_count() == 0);
  const auto c = greedy_color(g);
  CHECK(c.k == 1);
  CHECK(c.group(0).size() == 3);
}

TEST_CASE("greedy colouring is first-fit in index order") {
  // Path 0-1-2 plus 3 attached to 0.
  ConflictGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  const auto c = greedy_color(g);
  CHECK(c.color == std::vector<int>{0, 1, 0, 1});
  CHECK(c.k == 2);
  Coloring bad = c;
  bad.color[1] = 0;
  CHECK_FALSE(is_proper(g, bad));
}

TEST_CASE("random geometric instances: proper and within max degree + 1") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-70, 70);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 12;
    std::vector<Vec2> auv;
    for (int i = 0; i < n; ++i) auv.push_back({u(rng), u(rng)});
    AsvLayout asv;
    for (int j = 0; j < 1 + t % 3; ++j) asv.positions.push_back({u(rng), u(rng)});
    const auto g = build_conflict_graph(auv, asv, 50);
    const auto c = greedy_color(g);
    CHECK(is_proper(g, c));
    CHECK(static_cast<std::size_t>(c.k) <= g.max_degree() + 1);
    for (std::size_t i = 0; i < auv.size(); ++i)
      for (std::size_t j = i + 1; j < auv.size(); ++j)
        CHECK(g.adjacent(i, j) == acoustic_conflict(auv[i], auv[j], asv, 50));
  }
}
