#include "beamlabel/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace beamlabel {

Vec2 unit_from_degrees(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  // Snap the axis-aligned cases so 90 degrees yields exactly (0, 1).
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  auto snap = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
  return {snap(c), snap(s)};
}

double undirected_angle_degrees(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  double deg = std::atan2(d.y, d.x) * 180.0 / std::numbers::pi;
  deg = std::fmod(deg, 180.0);
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  return deg;
}

Rect::Rect(double x_min_, double y_min_, double x_max_, double y_max_)
    : x_min(x_min_), y_min(y_min_), x_max(x_max_), y_max(y_max_) {
  if (!(std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
        std::isfinite(y_max))) {
    throw std::invalid_argument("Rect: non-finite bound");
  }
  if (x_min > x_max || y_min > y_max) {
    throw std::invalid_argument("Rect: min exceeds max");
  }
}

Rect Rect::from_center(Vec2 center, double width, double height) {
  return Rect(center.x - 0.5 * width, center.y - 0.5 * height, center.x + 0.5 * width,
              center.y + 0.5 * height);
}

Rect Rect::translated(Vec2 d) const {
  Rect r = *this;
  r.x_min += d.x;
  r.x_max += d.x;
  r.y_min += d.y;
  r.y_max += d.y;
  return r;
}

Vec2 Rect::clamp(Vec2 p) const {
  return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

bool interiors_overlap(const Rect& a, const Rect& b) {
  // Degenerate rectangles have no interior.
  if (a.width() <= 0.0 || a.height() <= 0.0 || b.width() <= 0.0 || b.height() <= 0.0) {
    return false;
  }
  return a.x_min < b.x_max && b.x_min < a.x_max && a.y_min < b.y_max && b.y_min < a.y_max;
}

namespace {

// Closest pair of points on two closed intervals: returns (s on [a0,a1], t on [b0,b1]).
std::pair<double, double> interval_nearest(double a0, double a1, double b0, double b1) {
  if (a1 < b0) return {a1, b0};
  if (b1 < a0) return {a0, b1};
  // Intervals share a range; any common value works, take the middle of the overlap.
  const double lo = std::max(a0, b0);
  const double hi = std::min(a1, b1);
  const double m = 0.5 * (lo + hi);
  return {m, m};
}

}  // namespace

std::pair<Vec2, Vec2> rect_rect_nearest(const Rect& a, const Rect& b) {
  if (interiors_overlap(a, b)) {
    throw OverlapError("rect_rect_nearest: rectangle interiors intersect");
  }
  const auto [px, qx] = interval_nearest(a.x_min, a.x_max, b.x_min, b.x_max);
  const auto [py, qy] = interval_nearest(a.y_min, a.y_max, b.y_min, b.y_max);
  return {{px, py}, {qx, qy}};
}

double rect_rect_distance(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, b.x_min - a.x_max, a.x_min - b.x_max});
  const double dy = std::max({0.0, b.y_min - a.y_max, a.y_min - b.y_max});
  return std::hypot(dx, dy);
}

double rect_point_distance(const Rect& r, Vec2 p) { return (r.clamp(p) - p).norm(); }

const char* axis_name(AxisDir d) {
  switch (d) {
    case AxisDir::XNeg: return "x-";
    case AxisDir::XPos: return "x+";
    case AxisDir::YNeg: return "y-";
    case AxisDir::YPos: return "y+";
  }
  return "?";
}

AxisGaps rect_point_axis_gaps(const Rect& r, Vec2 p) {
  return {r.x_max - p.x, p.x - r.x_min, r.y_max - p.y, p.y - r.y_min};
}

bool segment_crosses_interior(Vec2 a, Vec2 b, const Rect& r) {
  if (r.width() <= 0.0 || r.height() <= 0.0) return false;
  // Liang-Barsky against the open box: the parameter range with strict containment
  // must be non-empty.
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec2 d = b - a;
  auto clip = [&](double p0, double dp, double lo, double hi) {
    if (dp == 0.0) return p0 > lo && p0 < hi;
    double ta = (lo - p0) / dp;
    double tb = (hi - p0) / dp;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return t0 < t1;
  };
  if (!clip(a.x, d.x, r.x_min, r.x_max)) return false;
  if (!clip(a.y, d.y, r.y_min, r.y_max)) return false;
  return t0 < t1;
}

}  // namespace beamlabel
