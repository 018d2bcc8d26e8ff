#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "beamlabel/metrics.hpp"
#include "beamlabel/optimizer.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

inline constexpr const char* kSchemaVersion = "1.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scene {
  std::vector<PointFeature> features;
  LayoutConfig config;

  bool operator==(const Scene& other) const;
};

/// Parses and validates a scene document. Errors are SceneError naming the offending
/// field path (e.g. "features[3].depth") or the line and column of a syntax error.
Scene parse_scene(const std::string& text);
Scene load_scene(const std::filesystem::path& path);

nlohmann::json scene_to_json(const Scene& scene);
void save_scene(const Scene& scene, const std::filesystem::path& path);

nlohmann::json config_to_json(const LayoutConfig& cfg);
/// Reads config fields over the defaults; `where` prefixes error paths.
LayoutConfig config_from_json(const nlohmann::json& j, const Rect& screen,
                              const std::string& where = "config");

const char* leader_type_name(LeaderType t);
const char* graph_kind_name(GraphKind k);
GraphKind parse_graph_kind(const std::string& s);
LeaderType leader_type_from_int(int v);

struct Placement {
  std::string method;
  std::vector<Label> labels;
};

nlohmann::json placement_to_json(const std::string& method, std::span<const Label> labels,
                                 const Rect& screen, const LayoutConfig& cfg);
Placement parse_placement(const std::string& text);
Placement load_placement(const std::filesystem::path& path);

nlohmann::json metrics_to_json(const MetricsReport& m);
nlohmann::json report_to_json(const RunReport& r);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace beamlabel
