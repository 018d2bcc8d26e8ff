#include <filesystem>

#include "beamlabel/optimizer.hpp"
#include "beamlabel/scene_io.hpp"
#include "beamlabel/synthetic.hpp"
#include "doctest.h"

using namespace beamlabel;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "schema_version": "1.0",
    "screen": {"width_mm": 100, "height_mm": 80},
    "features": [
      {"id": "a", "x_mm": 10, "y_mm": 10, "depth": 100, "text": "Alpha"},
      {"id": "b", "x_mm": 50, "y_mm": 40, "depth": 200, "text": "北京"}
    ]
  })");
}

std::string message_of(const std::string& text) {
  try {
    parse_scene(text);
  } catch (const SceneError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("scenes round-trip through json") {
  Scene s = generate_synthetic(30, 5, Rect(0, 0, 250, 150), {Density::Clustered, Script::Cjk});
  s.config.t_num = 7;
  s.config.graph_kind = GraphKind::MST;
  s.config.leader.type = LeaderType::FreeDirFreeConn;
  s.config.escape_reach = 4.0;
  s.config.beam.max_step = 0.3;
  const Scene back = parse_scene(scene_to_json(s).dump());
  CHECK(back == s);
  CHECK(back.config.escape_reach == 4.0);
  CHECK(back.config.t_num == 7);
}

TEST_CASE("minimal scenes take defaults") {
  const Scene s = parse_scene(minimal().dump());
  CHECK(s.features.size() == 2);
  CHECK(s.config.d_min == 0.2);
  CHECK(s.config.screen.width() == 100.0);
  CHECK(s.features[0].symbol_radius == 0.5);
}

TEST_CASE("invalid scenes name the problem") {
  json j = minimal();
  j["features"][1]["id"] = "a";
  CHECK(message_of(j.dump()).find("duplicate feature id 'a'") != std::string::npos);

  j = minimal();
  j["features"][0]["x_mm"] = 500;
  CHECK(message_of(j.dump()).find("outside the screen") != std::string::npos);

  j = minimal();
  j["features"][0]["depth"] = 0;
  CHECK(message_of(j.dump()).find("depth") != std::string::npos);

  j = minimal();
  j["schema_version"] = "9.9";
  CHECK(message_of(j.dump()).find("schema_version") != std::string::npos);

  j = minimal();
  j["features"][0].erase("text");
  CHECK(message_of(j.dump()).find("features[0].text") != std::string::npos);

  j = minimal();
  j["config"] = {{"leader", {{"type", 7}}}};
  CHECK(message_of(j.dump()).find("leader.type") != std::string::npos);

  CHECK(message_of("{\n  \"features\": [,\n}").find("line 2") != std::string::npos);
}

TEST_CASE("placements round-trip") {
  const Scene s = generate_synthetic(12, 6);
  const RunResult r = run(s.features, s.config);
  const Placement p = parse_placement(placement_to_json("beams", r.labels, s.config.screen, s.config).dump());
  CHECK(p.method == "beams");
  REQUIRE(p.labels.size() == r.labels.size());
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    CHECK(p.labels[i].feature_id == r.labels[i].feature_id);
    CHECK(p.labels[i].rect == r.labels[i].rect);
    CHECK(p.labels[i].deleted == r.labels[i].deleted);
  }
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/out.json", "x"), IoError);
}
