#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamlabel/forces.hpp"
#include "beamlabel/metrics.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

struct IterationRecord {
  int step = 0;
  double max_force = 0.0;  // largest nodal force applied in this pass, mm
  ConflictCounts conflicts;  // after the move
  std::size_t graph_edges = 0;
};

struct OptimizerState {
  std::vector<Label> labels;
  int step = 0;
  double last_max_force = 0.0;
  std::vector<IterationRecord> history;
  // Per-label step cap and previous move; a label whose move reverses direction has its
  // cap halved, damping two-cycles.
  std::vector<double> step_caps;
  std::vector<Vec2> last_moves;
  // Outstanding escape move per label; zero when none is under way.
  std::vector<Vec2> escapes;
  std::vector<int> conflict_streaks;
  std::vector<double> last_force_norms;
};

struct Termination {
  int t_s = 20;
  double t_f = 0.02;
};

enum class ExitReason { ForceThreshold, IterationLimit };

const char* exit_reason_name(ExitReason r);

/// Iteration budget: the override when given, else the label count clamped to [20, 100].
int effective_t_s(std::size_t n_labels, std::optional<int> override_t_s = std::nullopt);

/// Keeps only the component along the leader for fixed-direction, fixed-connection
/// leaders; other leader types move freely.
Vec2 project_for_leader_type(Vec2 displacement, const LeaderSpec& leader);

/// Marks labels deleted when they stick out of the screen across the leader axis, where
/// sliding along a fixed leader cannot bring them back.
std::vector<Label> handle_offscreen_fixed(std::vector<Label> labels, const Rect& screen,
                                          const LeaderSpec& leader);

/// Solve context shared by every pass of one loop.
struct StepContext {
  std::span<const PointFeature> features;
  const LayoutConfig* cfg = nullptr;
  double t_d = 0.0;
  // Feature index per label of the state; empty means index-aligned.
  std::span<const std::size_t> owner;
  // Features whose labels were deleted; empty means derive from the state.
  std::span<const std::uint8_t> hidden_features;
  // Running count of non-zero contributions per source tag.
  std::map<std::string, std::size_t>* contribution_counts = nullptr;
};

/// One pass: rebuild the graph, assemble forces, solve the beam system, move labels and
/// refresh their connection points.
OptimizerState step(OptimizerState state, const StepContext& ctx);

struct LoopReport {
  int iterations = 0;
  int t_s = 0;
  ExitReason exit = ExitReason::IterationLimit;
  double final_max_force = 0.0;
};

/// Runs passes until t_s is reached or the previous pass's largest force is at most t_f.
LoopReport run_loop(OptimizerState& state, const StepContext& ctx, const Termination& term);

struct GroupReport {
  std::size_t size = 0;
  LoopReport loop;
};

struct RunReport {
  int iterations = 0;  // passes of the global loop
  int t_s = 0;
  double t_f = 0.0;
  ExitReason exit = ExitReason::IterationLimit;
  double final_max_force = 0.0;
  bool infeasible = false;
  ConflictCounts conflicts;
  std::size_t deleted = 0;
  std::size_t graph_edges = 0;  // configured graph on the initial layout
  double seconds = 0.0;
  std::vector<IterationRecord> history;
  std::vector<GroupReport> groups;
  bool global_pass_ran = false;
  std::map<std::string, std::size_t> contribution_counts;
};

struct RunResult {
  std::vector<Label> initial;
  std::vector<Label> labels;
  RunReport report;
};

/// Full placement. With cfg.t_num set, labels are split into subgroups that are solved
/// independently; a global pass then clears any conflicts left between groups.
RunResult run(std::span<const PointFeature> features, const LayoutConfig& cfg);

}  // namespace beamlabel
