#include <random>

#include "../oracles.hpp"
#include "beamlabel/geometry.hpp"
#include "doctest.h"

using namespace beamlabel;

TEST_CASE("rect distance matches brute force") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    const Rect a = oracle::random_label(rng, 30.0, 8.0).rect;
    const Rect b = oracle::random_label(rng, 30.0, 8.0).rect;
    CHECK(rect_rect_distance(a, b) == doctest::Approx(oracle::gap(a, b)).epsilon(1e-12));
    CHECK(rect_rect_distance(a, b) == rect_rect_distance(b, a));
    CHECK(interiors_overlap(a, b) == oracle::overlap(a, b));
  }
}

TEST_CASE("nearest points realise the distance") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 500; ++k) {
    const Rect a = oracle::random_label(rng, 30.0, 8.0).rect;
    const Rect b = oracle::random_label(rng, 30.0, 8.0).rect;
    if (interiors_overlap(a, b)) continue;
    const auto [pa, pb] = rect_rect_nearest(a, b);
    CHECK((pb - pa).norm() == doctest::Approx(rect_rect_distance(a, b)));
    CHECK(a.clamp(pa) == pa);
    CHECK(b.clamp(pb) == pb);
  }
}

TEST_CASE("point distance and axis gaps") {
  const Rect r(0, 0, 4, 2);
  CHECK(rect_point_distance(r, {1, 1}) == 0.0);
  CHECK(rect_point_distance(r, {7, 6}) == doctest::Approx(5.0));
  const AxisGaps g = rect_point_axis_gaps(r, {1, 1});
  CHECK(g.x_neg == doctest::Approx(3.0));
  CHECK(g.x_pos == doctest::Approx(1.0));
  CHECK(g.y_neg == doctest::Approx(1.0));
  CHECK(g.y_pos == doctest::Approx(1.0));
}

TEST_CASE("segment orientation is undirected") {
  CHECK(undirected_angle_degrees({0, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(undirected_angle_degrees({1, 0}, {0, 0}) == doctest::Approx(0.0));
  CHECK(undirected_angle_degrees({0, 0}, {0, 1}) == doctest::Approx(90.0));
  CHECK(undirected_angle_degrees({1, 1}, {0, 0}) == doctest::Approx(45.0));
  CHECK(undirected_angle_degrees({0, 0}, {-1, 1}) == doctest::Approx(135.0));
}

TEST_CASE("segment crossing excludes boundary contact") {
  const Rect r(0, 0, 2, 2);
  CHECK(segment_crosses_interior({-1, 1}, {3, 1}, r));
  CHECK_FALSE(segment_crosses_interior({-1, 2}, {3, 2}, r));
  CHECK_FALSE(segment_crosses_interior({-1, 5}, {3, 5}, r));
}
