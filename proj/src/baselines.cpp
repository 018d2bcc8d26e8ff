#include "beamlabel/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "beamlabel/forces.hpp"
#include "beamlabel/optimizer.hpp"

namespace beamlabel {

namespace {

bool violates_screen(const Rect& r, const Rect& screen, double d_min) {
  return r.x_min - screen.x_min < d_min || screen.x_max - r.x_max < d_min ||
         r.y_min - screen.y_min < d_min || screen.y_max - r.y_max < d_min;
}

bool label_is_clear(std::span<const Label> labels, std::span<const PointFeature> features,
                    std::size_t i, const Rect& r, const LayoutConfig& cfg) {
  if (violates_screen(r, cfg.screen, cfg.d_min)) return false;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (j == i || labels[j].deleted) continue;
    if (interiors_overlap(r, labels[j].rect) || rect_rect_distance(r, labels[j].rect) < cfg.d_min) {
      return false;
    }
  }
  for (std::size_t k = 0; k < features.size(); ++k) {
    if (k == i || labels[k].deleted) continue;
    if (label_point_conflict(r, features[k], cfg.d_min)) return false;
  }
  return true;
}

bool keeps_attachment(const Label& moved, const PointFeature& f, const LeaderSpec& leader) {
  if (leader.type != LeaderType::FixedDirFreeConn) return true;
  return attachment_force(moved, f, leader) == Vec2{};
}

Vec2 moved_conn(const Label& before, const Label& after, const PointFeature& f,
                const LeaderSpec& leader, Vec2 offset) {
  switch (leader.type) {
    case LeaderType::FixedDirFixedConn:
    case LeaderType::FreeDirFixedConn:
      return before.conn + offset;
    case LeaderType::FreeDirFreeConn:
    case LeaderType::FixedDirFreeConn:
      break;
  }
  return connection_point(after, f, leader);
}

std::vector<Vec2> search_directions(const LeaderSpec& leader) {
  if (leader.type == LeaderType::FixedDirFixedConn) {
    const Vec2 u = leader.unit();
    return {-u, u};
  }
  std::vector<Vec2> dirs;
  for (AxisDir d : kAxisDirs) dirs.push_back(axis_unit(d));
  return dirs;
}

}  // namespace

BaselineResult nop(std::span<const PointFeature> features, const LayoutConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  BaselineResult r;
  r.initial = handle_offscreen_fixed(initial_layout(features, cfg), cfg.screen, cfg.leader);
  r.labels = r.initial;
  r.conflicts = count_conflicts(r.labels, features, cfg.d_min);
  r.infeasible = r.conflicts.total() > 0;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<std::size_t> conflict_degrees(std::span<const Label> labels,
                                          std::span<const PointFeature> features,
                                          const LayoutConfig& cfg) {
  std::vector<std::size_t> deg(labels.size(), 0);
  for (const auto& [i, j] : conflicting_label_pairs(labels, cfg.d_min)) {
    ++deg[i];
    ++deg[j];
  }
  for (const auto& [i, k] : conflicting_label_features(labels, features, cfg.d_min)) ++deg[i];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].deleted && violates_screen(labels[i].rect, cfg.screen, cfg.d_min)) ++deg[i];
  }
  return deg;
}

std::size_t localp_repair(std::vector<Label>& labels, std::span<const PointFeature> features,
                          const LayoutConfig& cfg, const LocalSearchOptions& opts) {
  const double step = opts.step_factor * cfg.d_min;
  const std::vector<Vec2> dirs = search_directions(cfg.leader);
  const std::size_t max_moves = 20 * labels.size() + 20;
  std::size_t moves = 0;

  auto try_place = [&](std::size_t i) {
    const Label& cur = labels[i];
    double inner = 0.0;
    for (int retry = 0; retry <= opts.max_retries; ++retry) {
      const double radius = opts.radius_factor * cfg.d_min * std::pow(2.0, retry);
      const auto k0 = static_cast<long>(std::floor(inner / step)) + 1;
      const auto k1 = static_cast<long>(std::floor(radius / step));
      for (long k = k0; k <= k1; ++k) {
        for (const Vec2& dir : dirs) {
          const Vec2 offset = dir * (static_cast<double>(k) * step);
          Label cand = cur;
          cand.rect = cur.rect.translated(offset);
          if (!keeps_attachment(cand, features[i], cfg.leader)) continue;
          if (!label_is_clear(labels, features, i, cand.rect, cfg)) continue;
          cand.conn = moved_conn(cur, cand, features[i], cfg.leader, offset);
          labels[i] = cand;
          return true;
        }
      }
      inner = radius;
    }
    return false;
  };

  while (moves < max_moves) {
    const std::vector<std::size_t> deg = conflict_degrees(labels, features, cfg);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (deg[i] > 0 && !labels[i].deleted) order.push_back(i);
    if (order.empty()) break;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    bool moved = false;
    for (std::size_t i : order) {
      if (try_place(i)) {
        moved = true;
        ++moves;
        break;
      }
    }
    if (!moved) break;
  }
  return moves;
}

BaselineResult localp(std::span<const PointFeature> features, const LayoutConfig& cfg,
                      const LocalSearchOptions& opts) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  BaselineResult r;
  r.initial = handle_offscreen_fixed(initial_layout(features, cfg), cfg.screen, cfg.leader);
  r.labels = r.initial;
  r.moves = localp_repair(r.labels, features, cfg, opts);
  r.conflicts = count_conflicts(r.labels, features, cfg.d_min);
  r.infeasible = r.conflicts.total() > 0;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace beamlabel
