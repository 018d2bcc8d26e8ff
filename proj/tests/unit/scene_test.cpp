#include "beamlabel/scene.hpp"
#include "beamlabel/scene_io.hpp"
#include "beamlabel/synthetic.hpp"
#include "doctest.h"

using namespace beamlabel;

TEST_CASE("font size clamps to the configured range") {
  LayoutConfig cfg;
  PointFeature f;
  f.depth = 100.0;
  const double near = font_size_for(f, 1e-6, cfg);
  const double far = font_size_for(f, 1e6, cfg);
  CHECK(near >= cfg.w_min);
  CHECK(far <= cfg.w_max);
  CHECK((near == cfg.w_min || near == cfg.w_max));
  CHECK((far == cfg.w_min || far == cfg.w_max));
}

TEST_CASE("double-width glyphs measure wider") {
  CHECK(is_double_width(U'中'));
  CHECK_FALSE(is_double_width(U'A'));
  const double cjk = measure_text("中文", 10.0).width;
  const double ascii = measure_text("AB", 10.0).width;
  CHECK(cjk > ascii);
  CHECK(measure_text("AB", 10.0).height == doctest::Approx(measure_text("中文", 10.0).height));
}

TEST_CASE("malformed utf-8 is rejected") {
  CHECK_THROWS_AS(decode_utf8("\xC3"), SceneError);
  CHECK_THROWS_AS(decode_utf8("\xFF\xFE"), SceneError);
  CHECK(decode_utf8("a中") == std::u32string{U'a', U'中'});
}

TEST_CASE("initial labels sit on the leader tip") {
  const Scene s = generate_synthetic(20, 3);
  const auto ls = initial_layout(s.features, s.config);
  const Vec2 u = s.config.leader.unit();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const Vec2 tip = s.features[i].anchor + u * s.config.leader.length;
    CHECK(ls[i].conn.x == doctest::Approx(tip.x));
    CHECK(ls[i].conn.y == doctest::Approx(tip.y));
    CHECK(ls[i].conn.x == doctest::Approx(ls[i].rect.x_min + 0.5 * ls[i].rect.width()));
    CHECK(ls[i].conn.y == doctest::Approx(ls[i].rect.y_min));
  }
}

TEST_CASE("config validation") {
  LayoutConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.d_min = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.w_min = 20;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.stall_progress = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
