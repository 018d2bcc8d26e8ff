#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "beamlabel/metrics.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

struct BaselineResult {
  std::vector<Label> initial;
  std::vector<Label> labels;
  ConflictCounts conflicts;
  std::size_t moves = 0;
  bool infeasible = false;
  double seconds = 0.0;
};

/// No adjustment: the initial layout as is.
BaselineResult nop(std::span<const PointFeature> features, const LayoutConfig& cfg);

struct LocalSearchOptions {
  double step_factor = 0.5;    // grid step = step_factor * d_min
  double radius_factor = 10.0;  // first search radius = radius_factor * d_min
  int max_retries = 6;          // radius doubles per retry
};

/// Number of things label i is in conflict with: other labels, foreign feature symbols,
/// and the screen border (counted once).
std::vector<std::size_t> conflict_degrees(std::span<const Label> labels,
                                          std::span<const PointFeature> features,
                                          const LayoutConfig& cfg);

/// Greedy repair: repeatedly takes the most conflicted label and moves it to the nearest
/// grid offset along an admissible axis where it is conflict-free. Stops when nothing is
/// left to fix or no conflicted label can be placed.
BaselineResult localp(std::span<const PointFeature> features, const LayoutConfig& cfg,
                      const LocalSearchOptions& opts = {});

/// The greedy repair on an existing layout.
std::size_t localp_repair(std::vector<Label>& labels, std::span<const PointFeature> features,
                          const LayoutConfig& cfg, const LocalSearchOptions& opts = {});

}  // namespace beamlabel
