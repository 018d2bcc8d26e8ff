#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beamlabel/beam_params.hpp"
#include "beamlabel/geometry.hpp"

namespace beamlabel {

inline constexpr double kMillimetresPerPoint = 0.3528;

struct PointFeature {
  std::string id;
  Vec2 anchor;          // screen position of the feature
  double depth = 1.0;   // planar distance from the viewpoint
  std::string text;
  double symbol_radius = 0.5;
};

/// Leader taxonomy: whether the leader direction and the connection point are fixed.
enum class LeaderType {
  FixedDirFixedConn = 1,
  FreeDirFixedConn = 2,
  FreeDirFreeConn = 3,
  FixedDirFreeConn = 4,
};

constexpr bool has_fixed_direction(LeaderType t) {
  return t == LeaderType::FixedDirFixedConn || t == LeaderType::FixedDirFreeConn;
}

struct LeaderSpec {
  double length = 10.0;     // mm
  double direction = 90.0;  // degrees, [0, 360)
  LeaderType type = LeaderType::FixedDirFreeConn;
  // Initial connection point in rect-relative coordinates; (0.5, 0) is the
  // bottom-edge midpoint.
  double attach_u = 0.5;
  double attach_v = 0.0;

  Vec2 unit() const { return unit_from_degrees(direction); }
};

struct Label {
  std::string feature_id;
  Rect rect;
  Vec2 conn;
  double font_size = 12.0;  // pt
  bool deleted = false;
};

enum class GraphKind { DT, MST };

struct LayoutConfig {
  double d_min = 0.2;   // mm
  double w_max = 12.0;  // pt
  double w_min = 6.0;   // pt
  LeaderSpec leader;
  double t_d_factor = 3.0;
  std::optional<int> t_s_override;
  double t_f_factor = 0.1;
  // Forces aim for d_min plus this many multiples of t_f, so a pass whose largest
  // force is below t_f leaves every gap at d_min or more.
  double force_margin_factor = 2.0;
  double step_damping = 0.5;   // cap factor after a label reverses direction
  double step_recovery = 1.5;  // cap growth otherwise, up to max_step
  bool escape_stalled = true;  // stalled conflicted labels head for the nearest free spot
  double escape_reach = 10.0;  // mm searched along each axis for that spot
  int stall_steps = 4;          // passes without progress before a label escapes anyway
  int balance_steps = 2;        // passes a cancelled push must persist before escaping
  double stall_progress = 0.9;  // a pass progresses when the push shrinks below this ratio
  std::optional<int> t_num;  // unset disables subgroup partitioning
  GraphKind graph_kind = GraphKind::DT;
  Rect screen{0.0, 0.0, 250.0, 150.0};
  double label_padding = 0.0;  // mm added on every side of the text box
  BeamParams beam;

  double max_step() const { return beam.max_step.value_or(2.0 * d_min); }
  double t_f() const { return t_f_factor * d_min; }
  double force_clearance() const { return d_min + force_margin_factor * t_f(); }

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;
};

class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// True for code points rendered at full (double) width.
bool is_double_width(char32_t cp);

/// Decodes UTF-8; throws SceneError on malformed input.
std::u32string decode_utf8(std::string_view text);

struct TextExtent {
  double width = 0.0;
  double height = 0.0;
};

/// Monospace approximation: 0.6 em per single-width glyph, 1.0 em per double-width
/// glyph, 1.2 em line height.
TextExtent measure_text(std::string_view text, double font_size_pt);

/// Depth-scaled font size, clamped to [w_min, w_max].
double font_size_for(const PointFeature& feature, double d_nearest, const LayoutConfig& cfg);

/// Builds the leadered start layout: each label hangs off the end of its leader with
/// the configured attachment point on the leader tip.
std::vector<Label> initial_layout(std::span<const PointFeature> features, const LayoutConfig& cfg);

}  // namespace beamlabel
