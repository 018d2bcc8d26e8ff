#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "beamlabel/geometry.hpp"
#include "beamlabel/proximity.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

class NotInConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Overlapping : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotOverlapping : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class LabelLargerThanScreen : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sources of force, in the order contributions are accumulated.
enum class ForceSource {
  Separation = 0,
  Overlap = 1,
  Point = 2,
  Attachment = 3,
  Screen = 4,
  Escape = 5,
};

const char* source_tag(ForceSource s);

struct Contribution {
  ForceSource source;
  Vec2 force;
};

struct ForceAssignment {
  std::vector<Vec2> total;
  std::vector<std::vector<Contribution>> contributions;

  std::size_t size() const { return total.size(); }
  double max_magnitude() const;
};

/// Which axis directions a label may be pushed along. Used to restrict label forces to
/// the leader axis for fixed-direction, fixed-connection leaders.
struct AxisMask {
  std::array<bool, 4> allowed{true, true, true, true};
  bool operator[](AxisDir d) const { return allowed[static_cast<int>(d)]; }
  bool any() const { return allowed[0] || allowed[1] || allowed[2] || allowed[3]; }
};

/// Admissible push directions for a leader: every direction unless the label is tied
/// to its leader ray, in which case only directions with a component along the ray.
AxisMask admissible_axes(const LeaderSpec& leader);

/// Repulsion for a disjoint pair closer than d_min: half the deficit each, along the
/// nearest-point axis.
std::pair<Vec2, Vec2> separation_force(const Label& a, const Label& b, double d_min);

/// Repulsion for overlapping rectangles: half of the cheapest axis push that clears
/// d_min, a along it and b opposite. Ties resolve x-, x+, y-, y+.
std::pair<Vec2, Vec2> overlap_force(const Label& a, const Label& b, double d_min,
                                    const AxisMask& mask = {});

bool label_point_conflict(const Rect& r, const PointFeature& p, double d_min);

/// The four single-axis pushes that clear a feature symbol by d_min, as vectors in
/// x-, x+, y-, y+ order.
std::array<Vec2, 4> point_repulsion_candidates(const Label& label, const PointFeature& p,
                                               double d_min);

/// Distance to move r along d, at least t, so that it lands clear of every listed
/// feature it would otherwise come to rest on.
double swept_clearance(const Rect& r, AxisDir d, double t, std::span<const PointFeature> features,
                       std::span<const std::size_t> blockers, double d_min);

/// Picks one candidate per feature so that every pair of picks is at most 90 degrees
/// apart, and returns the smallest resulting sum. Falls back to the smallest sum over all
/// picks when no admissible combination exists.
Vec2 compose_point_forces(std::span<const std::array<Vec2, 4>> candidates_per_feature);

/// Pull that brings the label back onto its fixed-direction leader ray; zero when the
/// ray still meets the label.
Vec2 attachment_force(const Label& label, const PointFeature& feature, const LeaderSpec& leader);

/// Inward push from every screen edge closer than d_min.
Vec2 screen_force(const Label& label, const Rect& screen, double d_min);

/// Ties labels to the features they annotate. With an empty owner list labels[i]
/// belongs to features[i]; with an empty hidden list the features of deleted labels are
/// hidden (identity ownership) or nothing is hidden (explicit ownership).
struct Ownership {
  std::span<const std::size_t> owner;
  std::span<const std::uint8_t> hidden_features;
};

/// Per-label sum of every force source. Deleted labels neither receive nor exert force.
ForceAssignment assemble_forces(std::span<const Label> labels,
                                std::span<const PointFeature> features, const LayoutConfig& cfg,
                                Ownership own = {});

/// Unordered label pairs (i < j) that are overlapping or closer than d_min, found with a
/// uniform-grid broad phase. Deleted labels are skipped.
std::vector<std::pair<std::size_t, std::size_t>> conflicting_label_pairs(
    std::span<const Label> labels, double d_min);

/// (label, feature) pairs in conflict, skipping each label's own feature, deleted labels
/// and hidden features.
std::vector<std::pair<std::size_t, std::size_t>> conflicting_label_features(
    std::span<const Label> labels, std::span<const PointFeature> features, double d_min,
    Ownership own = {});

/// True when label i placed at r keeps the working clearance from every other label and
/// visible foreign feature and d_min from the screen edges.
bool label_is_free(std::span<const Label> labels, std::span<const PointFeature> features,
                   std::size_t i, const Rect& r, const LayoutConfig& cfg, Ownership own = {});

/// Shortest move along an admissible axis that brings label i to a free spot, or zero when
/// none exists. Fixed-direction free-connection leaders must stay attached on the way.
Vec2 escape_offset(std::span<const Label> labels, std::span<const PointFeature> features,
                   std::size_t i, const LayoutConfig& cfg, Ownership own = {});

/// Where the leader meets the label for the given leader type.
Vec2 connection_point(const Label& label, const PointFeature& feature, const LeaderSpec& leader);

}  // namespace beamlabel
