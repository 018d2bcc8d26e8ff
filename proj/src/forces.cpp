#include "beamlabel/forces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace beamlabel {

namespace {

constexpr std::size_t kMaxComposedFeatures = 8;

// Direction pushing a away from b when the rectangles touch without a measurable gap.
Vec2 touching_axis(const Rect& a, const Rect& b) {
  if (a.x_max <= b.x_min) return {-1.0, 0.0};
  if (b.x_max <= a.x_min) return {1.0, 0.0};
  if (a.y_max <= b.y_min) return {0.0, -1.0};
  return {0.0, 1.0};
}

struct ResolvedOwnership {
  std::vector<std::size_t> owner;
  std::vector<std::uint8_t> hidden;
};

ResolvedOwnership resolve(std::span<const Label> labels, std::size_t feature_count,
                          const Ownership& own) {
  ResolvedOwnership r;
  if (own.owner.empty()) {
    if (labels.size() != feature_count) {
      throw std::invalid_argument("labels and features are not index-aligned");
    }
    r.owner.resize(labels.size());
    std::iota(r.owner.begin(), r.owner.end(), 0);
  } else {
    if (own.owner.size() != labels.size()) throw std::invalid_argument("owner list size mismatch");
    r.owner.assign(own.owner.begin(), own.owner.end());
  }
  if (!own.hidden_features.empty()) {
    if (own.hidden_features.size() != feature_count) {
      throw std::invalid_argument("hidden feature list size mismatch");
    }
    r.hidden.assign(own.hidden_features.begin(), own.hidden_features.end());
  } else {
    r.hidden.assign(feature_count, 0);
    if (own.owner.empty()) {
      for (std::size_t i = 0; i < labels.size(); ++i) r.hidden[i] = labels[i].deleted ? 1 : 0;
    }
  }
  return r;
}

// Uniform grid over rectangles inflated by a margin; yields candidate pairs.
class GridIndex {
 public:
  GridIndex(double cell, Vec2 origin) : cell_(cell), origin_(origin) {}

  void insert(std::size_t id, const Rect& r) {
    const auto [x0, y0] = cell_of({r.x_min, r.y_min});
    const auto [x1, y1] = cell_of({r.x_max, r.y_max});
    for (long long cx = x0; cx <= x1; ++cx)
      for (long long cy = y0; cy <= y1; ++cy) cells_[key(cx, cy)].push_back(id);
  }

  template <typename F>
  void query(const Rect& r, F&& visit) const {
    const auto [x0, y0] = cell_of({r.x_min, r.y_min});
    const auto [x1, y1] = cell_of({r.x_max, r.y_max});
    for (long long cx = x0; cx <= x1; ++cx) {
      for (long long cy = y0; cy <= y1; ++cy) {
        const auto it = cells_.find(key(cx, cy));
        if (it == cells_.end()) continue;
        for (std::size_t id : it->second) visit(id);
      }
    }
  }

 private:
  std::pair<long long, long long> cell_of(Vec2 p) const {
    return {static_cast<long long>(std::floor((p.x - origin_.x) / cell_)),
            static_cast<long long>(std::floor((p.y - origin_.y) / cell_))};
  }
  static long long key(long long cx, long long cy) { return cx * 1000003LL + cy; }

  double cell_;
  Vec2 origin_;
  std::unordered_map<long long, std::vector<std::size_t>> cells_;
};

Rect inflate(const Rect& r, double m) {
  return Rect(r.x_min - m, r.y_min - m, r.x_max + m, r.y_max + m);
}

bool labels_conflict(const Rect& a, const Rect& b, double d_min) {
  return interiors_overlap(a, b) || rect_rect_distance(a, b) < d_min;
}

Vec2 compose_masked(std::span<const std::array<Vec2, 4>> cands, const AxisMask& mask) {
  if (cands.empty()) throw std::invalid_argument("compose_point_forces: no candidates");
  if (cands.size() == 1) {
    Vec2 best{};
    double best_norm = std::numeric_limits<double>::infinity();
    for (AxisDir d : kAxisDirs) {
      if (!mask[d]) continue;
      const Vec2 c = cands[0][static_cast<int>(d)];
      if (c.norm() < best_norm) {
        best_norm = c.norm();
        best = c;
      }
    }
    return best;
  }

  const std::size_t k = cands.size();
  std::vector<int> pick(k, 0);
  Vec2 best_adm{}, best_any{};
  double adm_norm = std::numeric_limits<double>::infinity();
  double any_norm = adm_norm;
  // Odometer over 4^k selections in lexicographic order.
  while (true) {
    bool masked_out = false;
    for (std::size_t i = 0; i < k; ++i) masked_out = masked_out || !mask[kAxisDirs[pick[i]]];
    if (!masked_out) {
      Vec2 sum{};
      bool admissible = true;
      for (std::size_t i = 0; i < k; ++i) {
        const Vec2 vi = cands[i][pick[i]];
        sum += vi;
        for (std::size_t j = 0; j < i && admissible; ++j) {
          admissible = dot(vi, cands[j][pick[j]]) >= 0.0;
        }
      }
      const double n = sum.norm();
      if (admissible && n < adm_norm) {
        adm_norm = n;
        best_adm = sum;
      }
      if (n < any_norm) {
        any_norm = n;
        best_any = sum;
      }
    }
    std::size_t pos = k;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < 4) {
        done = false;
        break;
      }
      pick[pos] = 0;
    }
    if (done) break;
  }
  return std::isfinite(adm_norm) ? best_adm : best_any;
}

}  // namespace

const char* source_tag(ForceSource s) {
  switch (s) {
    case ForceSource::Separation: return "separation";
    case ForceSource::Overlap: return "overlap";
    case ForceSource::Point: return "point";
    case ForceSource::Attachment: return "attachment";
    case ForceSource::Screen: return "screen";
    case ForceSource::Escape: return "escape";
  }
  return "?";
}

double ForceAssignment::max_magnitude() const {
  double m = 0.0;
  for (const Vec2& f : total) m = std::max(m, f.norm());
  return m;
}

AxisMask admissible_axes(const LeaderSpec& leader) {
  AxisMask m;
  if (leader.type != LeaderType::FixedDirFixedConn) return m;
  const Vec2 u = leader.unit();
  for (AxisDir d : kAxisDirs) m.allowed[static_cast<int>(d)] = dot(axis_unit(d), u) != 0.0;
  return m;
}

std::pair<Vec2, Vec2> separation_force(const Label& a, const Label& b, double d_min) {
  if (interiors_overlap(a.rect, b.rect)) throw Overlapping("separation_force: labels overlap");
  const double gap = rect_rect_distance(a.rect, b.rect);
  if (gap >= d_min) throw NotInConflict("separation_force: gap is at least d_min");
  const auto [p, q] = rect_rect_nearest(a.rect, b.rect);
  const Vec2 d = p - q;
  const double len = d.norm();
  const Vec2 dir = len > 0.0 ? d / len : touching_axis(a.rect, b.rect);
  const Vec2 fa = dir * (0.5 * (d_min - gap));
  return {fa, -fa};
}

std::pair<Vec2, Vec2> overlap_force(const Label& a, const Label& b, double d_min,
                                    const AxisMask& mask) {
  if (!interiors_overlap(a.rect, b.rect)) throw NotOverlapping("overlap_force: labels are disjoint");
  const Rect& ri = a.rect;
  const Rect& rj = b.rect;
  const std::array<double, 4> push{
      ri.x_max - rj.x_min + d_min,  // move a toward -x
      rj.x_max - ri.x_min + d_min,  // +x
      ri.y_max - rj.y_min + d_min,  // -y
      rj.y_max - ri.y_min + d_min,  // +y
  };
  int best = -1;
  for (int d = 0; d < 4; ++d) {
    if (!mask.allowed[d]) continue;
    if (best < 0 || std::abs(push[d]) < std::abs(push[best])) best = d;
  }
  if (best < 0) return {{}, {}};
  const Vec2 fa = axis_unit(kAxisDirs[best]) * (0.5 * std::abs(push[best]));
  return {fa, -fa};
}

bool label_point_conflict(const Rect& r, const PointFeature& p, double d_min) {
  return rect_point_distance(r, p.anchor) - p.symbol_radius < d_min;
}

std::array<Vec2, 4> point_repulsion_candidates(const Label& label, const PointFeature& p,
                                               double d_min) {
  if (!label_point_conflict(label.rect, p, d_min)) {
    throw NotInConflict("point_repulsion_candidates: label clears the feature");
  }
  const AxisGaps g = rect_point_axis_gaps(label.rect, p.anchor);
  const double clear = p.symbol_radius + d_min;
  std::array<Vec2, 4> out{};
  for (AxisDir d : kAxisDirs) out[static_cast<int>(d)] = axis_unit(d) * (g[d] + clear);
  return out;
}

double swept_clearance(const Rect& r, AxisDir d, double t, std::span<const PointFeature> features,
                       std::span<const std::size_t> blockers, double d_min) {
  const Vec2 u = axis_unit(d);
  for (std::size_t guard = 0; guard <= blockers.size(); ++guard) {
    const Rect moved = r.translated(u * t);
    bool hit = false;
    for (std::size_t k : blockers) {
      const PointFeature& p = features[k];
      if (!label_point_conflict(moved, p, d_min)) continue;
      const double need = rect_point_axis_gaps(r, p.anchor)[d] + p.symbol_radius + d_min;
      if (need > t) {
        t = need;
        hit = true;
      }
    }
    if (!hit) break;
  }
  return t;
}

Vec2 compose_point_forces(std::span<const std::array<Vec2, 4>> candidates_per_feature) {
  return compose_masked(candidates_per_feature, AxisMask{});
}

namespace {

// Perpendicular offset of the leader line from the label: (signed anchor coordinate,
// clamped coordinate) along the leader normal.
struct LineOffset {
  Vec2 normal;
  double anchor_s;
  double clamped_s;
};

LineOffset leader_offset(const Label& label, Vec2 anchor, Vec2 u) {
  const Vec2 n{-u.y, u.x};
  const Rect& r = label.rect;
  const std::array<Vec2, 4> corners{Vec2{r.x_min, r.y_min}, Vec2{r.x_max, r.y_min},
                                    Vec2{r.x_min, r.y_max}, Vec2{r.x_max, r.y_max}};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Vec2& c : corners) {
    lo = std::min(lo, dot(n, c));
    hi = std::max(hi, dot(n, c));
  }
  const double s = dot(n, anchor);
  return {n, s, std::clamp(s, lo, hi)};
}

}  // namespace

Vec2 attachment_force(const Label& label, const PointFeature& feature, const LeaderSpec& leader) {
  if (!has_fixed_direction(leader.type)) return {};
  const LineOffset o = leader_offset(label, feature.anchor, leader.unit());
  if (o.anchor_s == o.clamped_s) return {};
  return o.normal * (o.anchor_s - o.clamped_s);
}

Vec2 connection_point(const Label& label, const PointFeature& feature, const LeaderSpec& leader) {
  switch (leader.type) {
    case LeaderType::FixedDirFixedConn:
    case LeaderType::FreeDirFixedConn:
      return label.conn;
    case LeaderType::FreeDirFreeConn:
      return label.rect.clamp(feature.anchor);
    case LeaderType::FixedDirFreeConn:
      break;
  }
  const Vec2 u = leader.unit();
  const LineOffset o = leader_offset(label, feature.anchor, u);
  const Vec2 base = feature.anchor + o.normal * (o.clamped_s - o.anchor_s);
  // Entry parameter of the (shifted) leader line into the closed rectangle.
  const Rect& r = label.rect;
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  auto clip = [&](double p0, double dp, double lo, double hi) {
    if (dp == 0.0) return;
    double ta = (lo - p0) / dp, tb = (hi - p0) / dp;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  };
  clip(base.x, u.x, r.x_min, r.x_max);
  clip(base.y, u.y, r.y_min, r.y_max);
  if (!std::isfinite(t0) || t0 > t1) return r.clamp(base);
  return r.clamp(base + u * t0);
}

Vec2 screen_force(const Label& label, const Rect& screen, double d_min) {
  const Rect& r = label.rect;
  const double left = r.x_min - screen.x_min;
  const double right = screen.x_max - r.x_max;
  const double bottom = r.y_min - screen.y_min;
  const double top = screen.y_max - r.y_max;
  if ((left < d_min && right < d_min) || (bottom < d_min && top < d_min)) {
    throw LabelLargerThanScreen("screen_force: label cannot keep d_min from both screen edges");
  }
  Vec2 f{};
  if (left < d_min) f.x += d_min - left;
  if (right < d_min) f.x -= d_min - right;
  if (bottom < d_min) f.y += d_min - bottom;
  if (top < d_min) f.y -= d_min - top;
  return f;
}

std::vector<std::pair<std::size_t, std::size_t>> conflicting_label_pairs(
    std::span<const Label> labels, double d_min) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  double cell = d_min;
  Vec2 origin{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& l : labels) {
    if (l.deleted) continue;
    cell = std::max(cell, std::max(l.rect.width(), l.rect.height()) + d_min);
    origin.x = std::min(origin.x, l.rect.x_min);
    origin.y = std::min(origin.y, l.rect.y_min);
  }
  if (!std::isfinite(origin.x)) return out;
  GridIndex grid(cell, origin);
  const double margin = 0.5 * d_min;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].deleted) grid.insert(i, inflate(labels[i].rect, margin));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].deleted) continue;
    std::vector<std::size_t> near;
    grid.query(inflate(labels[i].rect, margin), [&](std::size_t j) {
      if (j > i) near.push_back(j);
    });
    std::sort(near.begin(), near.end());
    near.erase(std::unique(near.begin(), near.end()), near.end());
    for (std::size_t j : near) {
      if (labels_conflict(labels[i].rect, labels[j].rect, d_min)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> conflicting_label_features(
    std::span<const Label> labels, std::span<const PointFeature> features, double d_min,
    Ownership own) {
  const ResolvedOwnership ro = resolve(labels, features.size(), own);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (features.empty()) return out;
  double cell = d_min;
  Vec2 origin{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& f : features) {
    cell = std::max(cell, 2.0 * f.symbol_radius + d_min);
    origin.x = std::min(origin.x, f.anchor.x - f.symbol_radius);
    origin.y = std::min(origin.y, f.anchor.y - f.symbol_radius);
  }
  GridIndex grid(cell, origin);
  for (std::size_t k = 0; k < features.size(); ++k) {
    if (ro.hidden[k]) continue;
    const auto& f = features[k];
    grid.insert(k, Rect::from_center(f.anchor, 2.0 * f.symbol_radius, 2.0 * f.symbol_radius));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].deleted) continue;
    std::vector<std::size_t> near;
    grid.query(inflate(labels[i].rect, d_min), [&](std::size_t k) { near.push_back(k); });
    std::sort(near.begin(), near.end());
    near.erase(std::unique(near.begin(), near.end()), near.end());
    for (std::size_t k : near) {
      if (k == ro.owner[i]) continue;
      if (label_point_conflict(labels[i].rect, features[k], d_min)) out.emplace_back(i, k);
    }
  }
  return out;
}

ForceAssignment assemble_forces(std::span<const Label> labels,
                                std::span<const PointFeature> features, const LayoutConfig& cfg,
                                Ownership own) {
  const ResolvedOwnership ro = resolve(labels, features.size(), own);
  const std::size_t n = labels.size();
  const double d_min = cfg.force_clearance();
  const AxisMask mask = admissible_axes(cfg.leader);

  ForceAssignment fa;
  fa.total.assign(n, Vec2{});
  fa.contributions.assign(n, {});
  auto add = [&](std::size_t i, ForceSource s, Vec2 f) {
    fa.contributions[i].push_back({s, f});
  };

  for (const auto& [i, j] : conflicting_label_pairs(labels, d_min)) {
    if (interiors_overlap(labels[i].rect, labels[j].rect)) {
      const auto [fi, fj] = overlap_force(labels[i], labels[j], d_min, mask);
      add(i, ForceSource::Overlap, fi);
      add(j, ForceSource::Overlap, fj);
    } else {
      const auto [fi, fj] = separation_force(labels[i], labels[j], d_min);
      add(i, ForceSource::Separation, fi);
      add(j, ForceSource::Separation, fj);
    }
  }

  std::vector<std::vector<std::size_t>> point_hits(n);
  for (const auto& [i, k] : conflicting_label_features(labels, features, d_min,
                                                       {ro.owner, ro.hidden})) {
    point_hits[i].push_back(k);
  }

  // Foreign, visible features a label may not be pushed onto.
  auto blockers = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < features.size(); ++k)
      if (k != ro.owner[i] && !ro.hidden[k]) out.push_back(k);
    return out;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Label& l = labels[i];
    if (l.deleted) continue;
    auto& hits = point_hits[i];
    if (!hits.empty()) {
      if (hits.size() > kMaxComposedFeatures) {
        const Vec2 c = l.rect.center();
        std::stable_sort(hits.begin(), hits.end(), [&](std::size_t x, std::size_t y) {
          return (features[x].anchor - c).squared_norm() < (features[y].anchor - c).squared_norm();
        });
        hits.resize(kMaxComposedFeatures);
      }
      std::vector<std::array<Vec2, 4>> cands;
      cands.reserve(hits.size());
      for (std::size_t k : hits) {
        auto c = point_repulsion_candidates(l, features[k], d_min);
        for (AxisDir d : kAxisDirs) {
          Vec2& v = c[static_cast<int>(d)];
          v = axis_unit(d) * swept_clearance(l.rect, d, v.norm(), features, blockers(i), d_min);
        }
        cands.push_back(c);
      }
      add(i, ForceSource::Point, compose_masked(cands, mask));
    }

    const Vec2 atr = attachment_force(l, features[ro.owner[i]], cfg.leader);
    if (atr != Vec2{} && cfg.leader.type == LeaderType::FixedDirFreeConn) {
      add(i, ForceSource::Attachment, atr);
    }

    Vec2 scr;
    try {
      scr = screen_force(l, cfg.screen, d_min);
    } catch (const LabelLargerThanScreen&) {
      // No placement fits; centre the label on the offending axis instead.
      const Vec2 off = cfg.screen.center() - l.rect.center();
      const bool wide = l.rect.width() + 2.0 * d_min > cfg.screen.width();
      const bool tall = l.rect.height() + 2.0 * d_min > cfg.screen.height();
      scr = {wide ? off.x : 0.0, tall ? off.y : 0.0};
    }
    if (scr != Vec2{}) add(i, ForceSource::Screen, scr);
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& cs = fa.contributions[i];
    std::stable_sort(cs.begin(), cs.end(), [](const Contribution& a, const Contribution& b) {
      return static_cast<int>(a.source) < static_cast<int>(b.source);
    });
    Vec2 sum{};
    for (const auto& c : cs) sum += c.force;
    fa.total[i] = sum;
  }
  return fa;
}

}  // namespace beamlabel

namespace beamlabel {

bool label_is_free(std::span<const Label> labels, std::span<const PointFeature> features,
                   std::size_t i, const Rect& r, const LayoutConfig& cfg, Ownership own) {
  const ResolvedOwnership ro = resolve(labels, features.size(), own);
  const double d = cfg.force_clearance();
  const Rect& s = cfg.screen;
  if (r.x_min - s.x_min < cfg.d_min || s.x_max - r.x_max < cfg.d_min ||
      r.y_min - s.y_min < cfg.d_min || s.y_max - r.y_max < cfg.d_min) {
    return false;
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (j == i || labels[j].deleted) continue;
    if (interiors_overlap(r, labels[j].rect) || rect_rect_distance(r, labels[j].rect) < d) {
      return false;
    }
  }
  for (std::size_t k = 0; k < features.size(); ++k) {
    if (k == ro.owner[i] || ro.hidden[k]) continue;
    if (label_point_conflict(r, features[k], d)) return false;
  }
  return true;
}

Vec2 escape_offset(std::span<const Label> labels, std::span<const PointFeature> features,
                   std::size_t i, const LayoutConfig& cfg, Ownership own) {
  const ResolvedOwnership ro = resolve(labels, features.size(), own);
  const Label& l = labels[i];
  const PointFeature& f = features[ro.owner[i]];
  std::vector<Vec2> dirs;
  if (cfg.leader.type == LeaderType::FixedDirFixedConn) {
    dirs = {cfg.leader.unit(), -cfg.leader.unit()};
  } else {
    for (AxisDir d : kAxisDirs) dirs.push_back(axis_unit(d));
  }
  // Start from the re-attached position so a label hanging off its leader can still escape.
  const Vec2 atr = cfg.leader.type == LeaderType::FixedDirFreeConn
                       ? attachment_force(l, f, cfg.leader)
                       : Vec2{};
  const Rect base = l.rect.translated(atr);
  const double h = 0.5 * cfg.d_min;
  const double limit = std::max(cfg.screen.width(), cfg.screen.height());
  const Ownership resolved{ro.owner, ro.hidden};
  double best = std::numeric_limits<double>::infinity();
  Vec2 out{};
  for (double reach = cfg.escape_reach; !std::isfinite(best) && reach <= 2.0 * limit; reach *= 2.0)
  for (const Vec2& u : dirs) {
    for (double t = 0.0; t <= std::min(best, reach); t += h) {
      Label moved = l;
      moved.rect = base.translated(u * t);
      if (cfg.leader.type == LeaderType::FixedDirFreeConn &&
          attachment_force(moved, f, cfg.leader) != Vec2{}) {
        break;
      }
      if (label_is_free(labels, features, i, moved.rect, cfg, resolved)) {
        best = t;
        out = u * t + atr;
        break;
      }
    }
  }
  return out;
}

}  // namespace beamlabel
