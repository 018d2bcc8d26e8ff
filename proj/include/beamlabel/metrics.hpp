#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "beamlabel/forces.hpp"
#include "beamlabel/proximity.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

struct ConflictCounts {
  std::size_t label_label = 0;    // N_rr
  std::size_t label_feature = 0;  // N_rp

  std::size_t total() const { return label_label + label_feature; }
  bool operator==(const ConflictCounts&) const = default;
};

ConflictCounts count_conflicts(std::span<const Label> labels,
                               std::span<const PointFeature> features, double d_min,
                               Ownership own = {});

/// Angle between two undirected orientations, in [0, 90].
double direction_deviation(double o, double o_prime);

struct EdgeDeviation {
  std::size_t a = 0;
  std::size_t b = 0;
  double deviation = 0.0;  // degrees
};

/// Mean orientation change of the graph's edges between two index-aligned layouts;
/// 0 for an edgeless graph.
double a_ms(std::span<const Label> initial, std::span<const Label> final_labels,
            const ProximityGraph& graph, std::vector<EdgeDeviation>* per_edge = nullptr);

/// Sum of centre displacements in centimetres; deleted labels contribute nothing.
double d_sum(std::span<const Label> initial, std::span<const Label> final_labels);

struct MetricsReport {
  std::size_t n_rr = 0;
  std::size_t n_rp = 0;
  double d_sum_cm = 0.0;
  double a_ms_deg = 0.0;
  double seconds = 0.0;
  std::size_t graph_edges = 0;
  std::vector<EdgeDeviation> per_edge;
};

/// Full metric suite. A_ms uses the configured graph built on the initial layout.
MetricsReport evaluate(std::span<const Label> initial, std::span<const Label> final_labels,
                       std::span<const PointFeature> features, const LayoutConfig& cfg,
                       double seconds = 0.0);

}  // namespace beamlabel
