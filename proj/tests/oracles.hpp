#pragma once

// Independent brute-force reference implementations used to check the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "beamlabel/proximity.hpp"
#include "beamlabel/scene.hpp"

namespace oracle {

using beamlabel::Label;
using beamlabel::PointFeature;
using beamlabel::Rect;
using beamlabel::Vec2;

inline double gap(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, b.x_min - a.x_max, a.x_min - b.x_max});
  const double dy = std::max({0.0, b.y_min - a.y_max, a.y_min - b.y_max});
  return std::hypot(dx, dy);
}

inline bool overlap(const Rect& a, const Rect& b) {
  return std::min(a.x_max, b.x_max) > std::max(a.x_min, b.x_min) &&
         std::min(a.y_max, b.y_max) > std::max(a.y_min, b.y_min);
}

inline double point_gap(const Rect& r, Vec2 p) {
  const double dx = std::max({0.0, r.x_min - p.x, p.x - r.x_max});
  const double dy = std::max({0.0, r.y_min - p.y, p.y - r.y_max});
  return std::hypot(dx, dy);
}

struct Counts {
  std::size_t rr = 0;
  std::size_t rp = 0;
};

// O(n^2) recount: a symbol disk conflicts when the rect comes within d_min of its rim.
inline Counts count(std::span<const Label> labels, std::span<const PointFeature> features,
                    double d_min) {
  Counts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].deleted) continue;
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[j].deleted) continue;
      if (overlap(labels[i].rect, labels[j].rect) || gap(labels[i].rect, labels[j].rect) < d_min)
        ++c.rr;
    }
    for (std::size_t k = 0; k < features.size(); ++k) {
      if (k == i || (k < labels.size() && labels[k].deleted)) continue;
      if (point_gap(labels[i].rect, features[k].anchor) - features[k].symbol_radius < d_min) ++c.rp;
    }
  }
  return c;
}

inline double orientation(Vec2 a, Vec2 b) {
  double deg = std::atan2(b.y - a.y, b.x - a.x) * 180.0 / M_PI;
  while (deg < 0.0) deg += 180.0;
  while (deg >= 180.0) deg -= 180.0;
  return deg;
}

inline double a_ms(std::span<const Label> before, std::span<const Label> after,
                   const beamlabel::ProximityGraph& g) {
  if (g.edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : g.edges) {
    const double o = orientation(before[e.a].rect.center(), before[e.b].rect.center());
    const double o2 = orientation(after[e.a].rect.center(), after[e.b].rect.center());
    const double d = std::abs(o - o2);
    sum += d < 90.0 ? d : 180.0 - d;
  }
  return sum / static_cast<double>(g.edges.size());
}

inline double d_sum_cm(std::span<const Label> before, std::span<const Label> after) {
  double s = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (after[i].deleted) continue;
    const Vec2 a = before[i].rect.center();
    const Vec2 b = after[i].rect.center();
    s += std::hypot(b.x - a.x, b.y - a.y);
  }
  return s / 10.0;
}

// Every one-candidate-per-feature selection, admissible ones first.
inline Vec2 compose(std::span<const std::array<Vec2, 4>> cands) {
  const std::size_t k = cands.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 4;
  double best_adm = std::numeric_limits<double>::infinity(), best_any = best_adm;
  Vec2 adm{}, any{};
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Vec2> pick;
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i, c /= 4) pick.push_back(cands[i][c % 4]);
    Vec2 sum{};
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      sum = sum + pick[i];
      for (std::size_t j = i + 1; j < k; ++j)
        if (pick[i].x * pick[j].x + pick[i].y * pick[j].y < 0.0) ok = false;
    }
    const double m = std::hypot(sum.x, sum.y);
    if (m < best_any) {
      best_any = m;
      any = sum;
    }
    if (ok && m < best_adm) {
      best_adm = m;
      adm = sum;
    }
  }
  return std::isfinite(best_adm) ? adm : any;
}

inline Label random_label(std::mt19937_64& rng, double extent, double max_size) {
  std::uniform_real_distribution<double> pos(0.0, extent), size(0.2, max_size);
  const double x = pos(rng), y = pos(rng);
  Label l;
  l.rect = Rect(x, y, x + size(rng), y + size(rng));
  l.conn = {x, y};
  return l;
}

}  // namespace oracle
