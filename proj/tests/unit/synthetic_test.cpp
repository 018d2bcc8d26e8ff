#include "beamlabel/scene_io.hpp"
#include "beamlabel/synthetic.hpp"
#include "doctest.h"

using namespace beamlabel;

TEST_CASE("generation is deterministic per seed") {
  for (auto d : {Density::Uniform, Density::Clustered}) {
    for (auto sc : {Script::Ascii, Script::Cjk}) {
      const Scene a = generate_synthetic(40, 77, Rect(0, 0, 250, 150), {d, sc});
      const Scene b = generate_synthetic(40, 77, Rect(0, 0, 250, 150), {d, sc});
      const Scene c = generate_synthetic(40, 78, Rect(0, 0, 250, 150), {d, sc});
      CHECK(a == b);
      CHECK_FALSE(a == c);
    }
  }
}

TEST_CASE("generated scenes are valid") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene s = generate_synthetic(60, seed, Rect(0, 0, 250, 150),
                                       {seed % 2 ? Density::Clustered : Density::Uniform, Script::Cjk});
    CHECK(s.features.size() == 60);
    CHECK_NOTHROW(parse_scene(scene_to_json(s).dump()));
    for (const auto& f : s.features) {
      CHECK(s.config.screen.contains(f.anchor));
      CHECK(f.depth >= 50.0);
      CHECK(f.depth <= 500.0);
    }
  }
}

TEST_CASE("transliteration keeps glyph count") {
  CHECK(ascii_transliteration("AB 1") == "AB 1");
  const std::string t = ascii_transliteration("北京站");
  CHECK(t.size() == 3);
  CHECK(decode_utf8(t).size() == 3);
  CHECK_THROWS(parse_density("dense"));
  CHECK(parse_script("cjk") == Script::Cjk);
}
