#include <random>

#include "../oracles.hpp"
#include "beamlabel/forces.hpp"
#include "beamlabel/metrics.hpp"
#include "doctest.h"

using namespace beamlabel;

namespace {

Label at(double x0, double y0, double x1, double y1) {
  Label l;
  l.rect = Rect(x0, y0, x1, y1);
  return l;
}

}  // namespace

TEST_CASE("separation pushes half the deficit each way") {
  const auto [fa, fb] = separation_force(at(0, 0, 1, 1), at(1.1, 0, 2, 1), 0.2);
  CHECK(fa.x == doctest::Approx(-0.05));
  CHECK(fb.x == doctest::Approx(0.05));
  CHECK(fa.y == 0.0);
  CHECK_THROWS(separation_force(at(0, 0, 1, 1), at(3, 0, 4, 1), 0.2));
}

TEST_CASE("overlap picks the cheapest axis") {
  const auto [fa, fb] = overlap_force(at(0, 0, 2, 2), at(1.5, 0.5, 4, 1.5), 0.2);
  CHECK(fa.x == doctest::Approx(-0.35));
  CHECK(fb.x == doctest::Approx(0.35));
  CHECK(fa.y == 0.0);
}

TEST_CASE("forces are zero once the layout is clear") {
  std::vector<Label> ls{at(0, 0, 2, 1), at(5, 0, 7, 1), at(0, 5, 2, 6)};
  std::vector<PointFeature> fs(3);
  fs[0].anchor = {20, 20};
  fs[1].anchor = {30, 20};
  fs[2].anchor = {40, 20};
  LayoutConfig cfg;
  cfg.leader.type = LeaderType::FreeDirFixedConn;
  cfg.screen = Rect(-10, -10, 60, 60);
  const ForceAssignment fa = assemble_forces(ls, fs, cfg);
  CHECK(fa.max_magnitude() == 0.0);
}

TEST_CASE("assembled label forces obey action and reaction") {
  std::mt19937_64 rng(31);
  LayoutConfig cfg;
  cfg.leader.type = LeaderType::FreeDirFixedConn;
  cfg.screen = Rect(-100, -100, 100, 100);
  for (int k = 0; k < 200; ++k) {
    std::vector<Label> ls{oracle::random_label(rng, 5.0, 3.0), oracle::random_label(rng, 5.0, 3.0)};
    std::vector<PointFeature> fs(2);
    fs[0].anchor = {-90, -90};
    fs[1].anchor = {90, 90};
    const ForceAssignment fa = assemble_forces(ls, fs, cfg);
    CHECK((fa.total[0] + fa.total[1]).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("screen force points inward") {
  const Vec2 f = screen_force(at(0.05, 10, 3, 11), Rect(0, 0, 100, 100), 0.2);
  CHECK(f.x == doctest::Approx(0.15));
  CHECK(f.y == 0.0);
}

TEST_CASE("fixed leaders restrict push directions") {
  LeaderSpec up;
  up.type = LeaderType::FixedDirFixedConn;
  const AxisMask m = admissible_axes(up);
  CHECK_FALSE(m[AxisDir::XNeg]);
  CHECK_FALSE(m[AxisDir::XPos]);
  CHECK(m[AxisDir::YNeg]);
  CHECK(m[AxisDir::YPos]);
  LeaderSpec free;
  free.type = LeaderType::FreeDirFreeConn;
  CHECK(admissible_axes(free).any());
}

TEST_CASE("composition matches exhaustive search") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    std::vector<std::array<Vec2, 4>> c(2 + k % 3);
    for (auto& a : c)
      a = {Vec2{-std::abs(u(rng)), 0}, Vec2{std::abs(u(rng)), 0}, Vec2{0, -std::abs(u(rng))},
           Vec2{0, std::abs(u(rng))}};
    const Vec2 got = compose_point_forces(c);
    const Vec2 want = oracle::compose(c);
    CHECK(got.x == doctest::Approx(want.x).epsilon(1e-12));
    CHECK(got.y == doctest::Approx(want.y).epsilon(1e-12));
  }
}

TEST_CASE("escape lands on a free spot") {
  std::vector<Label> ls{at(0, 0, 4, 1), at(1, 0.5, 5, 1.5)};
  std::vector<PointFeature> fs(2);
  fs[0].anchor = {2, -10};
  fs[1].anchor = {3, -9.5};
  LayoutConfig cfg;
  cfg.leader.type = LeaderType::FreeDirFixedConn;
  cfg.screen = Rect(-50, -50, 50, 50);
  const Vec2 d = escape_offset(ls, fs, 1, cfg);
  REQUIRE(d.norm() > 0.0);
  CHECK(label_is_free(ls, fs, 1, ls[1].rect.translated(d), cfg));
  const auto c = count_conflicts(std::vector<Label>{ls[0], Label{"", ls[1].rect.translated(d)}}, fs,
                                 cfg.d_min);
  CHECK(c.total() == 0);
}
