#include "beamlabel/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "beamlabel/beams.hpp"
#include "beamlabel/proximity.hpp"

namespace beamlabel {

const char* exit_reason_name(ExitReason r) {
  return r == ExitReason::ForceThreshold ? "force_threshold" : "iteration_limit";
}

int effective_t_s(std::size_t n_labels, std::optional<int> override_t_s) {
  if (override_t_s) return *override_t_s;
  if (n_labels <= 20) return 20;
  if (n_labels >= 100) return 100;
  return static_cast<int>(n_labels);
}

Vec2 project_for_leader_type(Vec2 displacement, const LeaderSpec& leader) {
  if (leader.type != LeaderType::FixedDirFixedConn) return displacement;
  const Vec2 u = leader.unit();
  return u * dot(displacement, u);
}

std::vector<Label> handle_offscreen_fixed(std::vector<Label> labels, const Rect& screen,
                                          const LeaderSpec& leader) {
  if (leader.type != LeaderType::FixedDirFixedConn) return labels;
  const Vec2 u = leader.unit();
  const bool cross_is_x = std::abs(u.y) >= std::abs(u.x);
  for (auto& l : labels) {
    if (l.deleted) continue;
    const bool out = cross_is_x ? (l.rect.x_min < screen.x_min || l.rect.x_max > screen.x_max)
                                : (l.rect.y_min < screen.y_min || l.rect.y_max > screen.y_max);
    if (out) l.deleted = true;
  }
  return labels;
}

namespace {

struct ActiveView {
  std::vector<std::size_t> index;  // into state.labels
  std::vector<Label> labels;
  std::vector<std::size_t> owner;  // feature index
  std::vector<std::uint8_t> hidden;
};

ActiveView active_view(const OptimizerState& state, const StepContext& ctx) {
  ActiveView v;
  const bool aligned = ctx.owner.empty();
  for (std::size_t i = 0; i < state.labels.size(); ++i) {
    if (state.labels[i].deleted) continue;
    v.index.push_back(i);
    v.labels.push_back(state.labels[i]);
    v.owner.push_back(aligned ? i : ctx.owner[i]);
  }
  if (!ctx.hidden_features.empty()) {
    v.hidden.assign(ctx.hidden_features.begin(), ctx.hidden_features.end());
  } else {
    v.hidden.assign(ctx.features.size(), 0);
    if (aligned) {
      for (std::size_t i = 0; i < state.labels.size(); ++i) v.hidden[i] = state.labels[i].deleted;
    }
  }
  return v;
}

}  // namespace

OptimizerState step(OptimizerState state, const StepContext& ctx) {
  const LayoutConfig& cfg = *ctx.cfg;
  ActiveView view = active_view(state, ctx);
  const Ownership own{view.owner, view.hidden};

  const ProximityGraph graph = build_graph(view.labels, cfg.graph_kind, ctx.t_d);
  ForceAssignment forces = assemble_forces(view.labels, ctx.features, cfg, own);
  if (state.escapes.size() != state.labels.size()) {
    state.escapes.assign(state.labels.size(), Vec2{});
    state.conflict_streaks.assign(state.labels.size(), 0);
    state.last_force_norms.assign(state.labels.size(), 0.0);
  }
  if (cfg.escape_stalled) {
    std::vector<std::uint8_t> in_conflict(view.index.size(), 0);
    for (const auto& [i, j] : conflicting_label_pairs(view.labels, cfg.d_min)) {
      in_conflict[i] = 1;
      in_conflict[j] = 1;
    }
    for (const auto& [i, f] : conflicting_label_features(view.labels, ctx.features, cfg.d_min, own)) {
      in_conflict[i] = 1;
    }
    double settled = 0.0;
    for (const Vec2& f : forces.total) settled = std::max(settled, project_for_leader_type(f, cfg.leader).norm());
    const bool would_stop = settled <= cfg.t_f();
    for (std::size_t k = 0; k < view.index.size(); ++k) {
      Vec2& rem = state.escapes[view.index[k]];
      auto& cs = forces.contributions[k];
      const bool conflicted = in_conflict[k] != 0;
      int& streak = state.conflict_streaks[view.index[k]];
      if (!conflicted) {
        rem = {};
        streak = 0;
        state.last_force_norms[view.index[k]] = 0.0;
        continue;
      }
      // Only passes that fail to shrink the push count towards a stall.
      double& last = state.last_force_norms[view.index[k]];
      const double now = forces.total[k].norm();
      if (last - now > (1.0 - cfg.stall_progress) * std::min(last, cfg.max_step())) {
        streak = 0;
      } else {
        ++streak;
      }
      last = now;
      // Opposing pushes cancel or the conflict persists: head for the nearest free spot.
      if (rem == Vec2{} && ((now <= cfg.t_f() && (would_stop || streak >= cfg.balance_steps)) || streak > cfg.stall_steps)) {
        streak = 0;
        rem = escape_offset(view.labels, ctx.features, k, cfg, own);
      }
      if (rem == Vec2{}) continue;
      cs.assign(1, Contribution{ForceSource::Escape, rem});
      forces.total[k] = rem;
    }
  }
  if (ctx.contribution_counts) {
    for (const auto& cs : forces.contributions)
      for (const auto& c : cs) ++(*ctx.contribution_counts)[source_tag(c.source)];
  }
  for (Vec2& f : forces.total) f = project_for_leader_type(f, cfg.leader);
  const double max_force = forces.max_magnitude();

  if (max_force > 0.0) {
    const DisplacementField field = solve_uncapped(graph, forces.total, cfg.beam);
    if (state.step_caps.size() != state.labels.size()) {
      state.step_caps.assign(state.labels.size(), cfg.max_step());
      state.last_moves.assign(state.labels.size(), Vec2{});
    }
    for (std::size_t k = 0; k < view.index.size(); ++k) {
      const std::size_t li = view.index[k];
      Vec2 d = project_for_leader_type(field.nodes[k].translation(), cfg.leader);
      double& cap = state.step_caps[li];
      if (dot(d, state.last_moves[li]) < 0.0) {
        cap *= cfg.step_damping;
      } else {
        cap = std::min(cfg.max_step(), cap * cfg.step_recovery);
      }
      const Vec2 rem = state.escapes[li];
      const double limit = rem != Vec2{} ? std::max(cap, rem.norm()) : cap;
      const double len = d.norm();
      if (len > limit) d = d * (limit / len);
      state.last_moves[li] = d;
      if (Vec2& left_over = state.escapes[li]; left_over != Vec2{}) {
        const double left = left_over.norm() - dot(d, left_over) / left_over.norm();
        left_over = left > 0.5 * cfg.d_min ? left_over * (left / left_over.norm()) : Vec2{};
      }
      Label& l = state.labels[li];
      l.rect = l.rect.translated(d);
      const PointFeature& f = ctx.features[view.owner[k]];
      switch (cfg.leader.type) {
        case LeaderType::FixedDirFixedConn:
        case LeaderType::FreeDirFixedConn:
          l.conn += d;
          break;
        case LeaderType::FreeDirFreeConn:
        case LeaderType::FixedDirFreeConn:
          l.conn = connection_point(l, f, cfg.leader);
          break;
      }
      view.labels[k] = l;
    }
  }

  state.step += 1;
  state.last_max_force = max_force;
  IterationRecord rec;
  rec.step = state.step;
  rec.max_force = max_force;
  rec.conflicts = count_conflicts(view.labels, ctx.features, cfg.d_min, own);
  rec.graph_edges = graph.edges.size();
  state.history.push_back(rec);
  return state;
}

LoopReport run_loop(OptimizerState& state, const StepContext& ctx, const Termination& term) {
  LoopReport r;
  r.t_s = term.t_s;
  const int start = state.step;
  do {
    state = step(std::move(state), ctx);
  } while (state.step - start < term.t_s && state.last_max_force > term.t_f);
  r.iterations = state.step - start;
  r.final_max_force = state.last_max_force;
  r.exit = state.last_max_force <= term.t_f ? ExitReason::ForceThreshold
                                            : ExitReason::IterationLimit;
  return r;
}

RunResult run(std::span<const PointFeature> features, const LayoutConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunResult result;
  RunReport& rep = result.report;

  result.initial = handle_offscreen_fixed(initial_layout(features, cfg), cfg.screen, cfg.leader);
  const double t_d = long_edge_threshold(features, cfg);
  const Termination term{effective_t_s(features.size(), cfg.t_s_override), cfg.t_f()};
  rep.t_s = term.t_s;
  rep.t_f = term.t_f;
  rep.graph_edges = build_graph(result.initial, cfg.graph_kind, t_d).edges.size();
  for (const auto& l : result.initial) rep.deleted += l.deleted ? 1 : 0;

  OptimizerState state;
  state.labels = result.initial;

  StepContext ctx;
  ctx.features = features;
  ctx.cfg = &cfg;
  ctx.t_d = t_d;
  ctx.contribution_counts = &rep.contribution_counts;

  bool need_global = true;
  if (cfg.t_num) {
    std::vector<std::size_t> live;
    std::vector<Label> live_labels;
    for (std::size_t i = 0; i < state.labels.size(); ++i) {
      if (state.labels[i].deleted) continue;
      live.push_back(i);
      live_labels.push_back(state.labels[i]);
    }
    std::vector<std::uint8_t> hidden(features.size(), 0);
    for (std::size_t i = 0; i < state.labels.size(); ++i) hidden[i] = state.labels[i].deleted;

    for (const auto& group : partition(live_labels, *cfg.t_num)) {
      OptimizerState gs;
      std::vector<std::size_t> owner;
      for (std::size_t g : group) {
        gs.labels.push_back(live_labels[g]);
        owner.push_back(live[g]);
      }
      StepContext gctx = ctx;
      gctx.owner = owner;
      gctx.hidden_features = hidden;
      const Termination gterm{effective_t_s(group.size(), cfg.t_s_override), cfg.t_f()};
      GroupReport gr;
      gr.size = group.size();
      gr.loop = run_loop(gs, gctx, gterm);
      rep.groups.push_back(gr);
      for (std::size_t k = 0; k < group.size(); ++k) state.labels[owner[k]] = gs.labels[k];
    }
    // Groups ignore one another; only fall back to a global pass for leftovers.
    need_global = count_conflicts(state.labels, features, cfg.d_min).total() > 0;
  }

  if (need_global) {
    const LoopReport lr = run_loop(state, ctx, term);
    rep.global_pass_ran = true;
    rep.iterations = lr.iterations;
    rep.exit = lr.exit;
    rep.final_max_force = lr.final_max_force;
  } else {
    rep.exit = ExitReason::ForceThreshold;
    rep.final_max_force = 0.0;
  }
  rep.history = std::move(state.history);

  result.labels = std::move(state.labels);
  rep.conflicts = count_conflicts(result.labels, features, cfg.d_min);
  rep.infeasible = rep.conflicts.total() > 0;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace beamlabel
