#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace beamlabel {

// All lengths are screen millimeters; y grows upward.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Unit vector for an angle in degrees measured counter-clockwise from +x.
Vec2 unit_from_degrees(double degrees);

/// Undirected orientation of a segment, in [0, 180).
double undirected_angle_degrees(Vec2 from, Vec2 to);

struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  constexpr Rect() = default;
  /// Throws std::invalid_argument when min exceeds max or a bound is not finite.
  Rect(double x_min_, double y_min_, double x_max_, double y_max_);

  static Rect from_center(Vec2 center, double width, double height);

  constexpr double width() const { return x_max - x_min; }
  constexpr double height() const { return y_max - y_min; }
  constexpr Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  constexpr Vec2 min_corner() const { return {x_min, y_min}; }
  constexpr Vec2 max_corner() const { return {x_max, y_max}; }
  double diagonal() const { return std::hypot(width(), height()); }

  Rect translated(Vec2 d) const;
  bool contains(Vec2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  /// Closest point of the (closed) rectangle to p.
  Vec2 clamp(Vec2 p) const;

  bool operator==(const Rect&) const = default;
};

/// True when the open interiors intersect. Touching boundaries do not overlap.
bool interiors_overlap(const Rect& a, const Rect& b);

class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closest pair (p on a, q on b). Throws OverlapError when the interiors intersect.
std::pair<Vec2, Vec2> rect_rect_nearest(const Rect& a, const Rect& b);

/// Euclidean gap between two rectangles; 0 when they touch or overlap.
double rect_rect_distance(const Rect& a, const Rect& b);

/// Distance from p to the closed rectangle; 0 when p is inside.
double rect_point_distance(const Rect& r, Vec2 p);

enum class AxisDir { XNeg = 0, XPos = 1, YNeg = 2, YPos = 3 };

inline constexpr std::array<AxisDir, 4> kAxisDirs = {AxisDir::XNeg, AxisDir::XPos, AxisDir::YNeg,
                                                     AxisDir::YPos};

constexpr Vec2 axis_unit(AxisDir d) {
  switch (d) {
    case AxisDir::XNeg: return {-1.0, 0.0};
    case AxisDir::XPos: return {1.0, 0.0};
    case AxisDir::YNeg: return {0.0, -1.0};
    case AxisDir::YPos: return {0.0, 1.0};
  }
  return {};
}

const char* axis_name(AxisDir d);

/// Signed travel of r along each axis direction that brings the matching face onto p:
/// shifting r by gaps[d] * axis_unit(d) puts p on the x_max, x_min, y_max, y_min face
/// respectively. Negative when r is already clear of p moving that way.
struct AxisGaps {
  double x_neg = 0.0;
  double x_pos = 0.0;
  double y_neg = 0.0;
  double y_pos = 0.0;

  double operator[](AxisDir d) const {
    switch (d) {
      case AxisDir::XNeg: return x_neg;
      case AxisDir::XPos: return x_pos;
      case AxisDir::YNeg: return y_neg;
      case AxisDir::YPos: return y_pos;
    }
    return 0.0;
  }
};

AxisGaps rect_point_axis_gaps(const Rect& r, Vec2 p);

/// Whether segment ab passes through the open interior of r.
bool segment_crosses_interior(Vec2 a, Vec2 b, const Rect& r);

}  // namespace beamlabel
