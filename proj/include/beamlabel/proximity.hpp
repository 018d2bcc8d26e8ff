#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "beamlabel/geometry.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

struct GraphEdge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double rest_length = 0.0;     // mm, > 0
  double rest_direction = 0.0;  // degrees, [0, 180)
};

/// Neighbourhood graph over label centres. Node i corresponds to labels[i] of the
/// span the graph was built from.
struct ProximityGraph {
  std::vector<Vec2> positions;
  std::vector<GraphEdge> edges;

  std::size_t node_count() const { return positions.size(); }
  bool has_edge(std::size_t a, std::size_t b) const;
  /// Node sets of the connected components, each sorted, ordered by smallest node.
  std::vector<std::vector<std::size_t>> components() const;
};

/// Undirected Delaunay edges (i < j, sorted) of a point set. Collinear input yields the
/// path along the line; coincident points are separated by a one-quantum jitter keyed by
/// input order.
std::vector<std::pair<std::size_t, std::size_t>> delaunay_edges(std::span<const Vec2> points);

ProximityGraph build_dt(std::span<const Label> labels);

/// Drops edges longer than t_d and edges whose centre segment passes through the open
/// interior of any third label.
ProximityGraph prune(const ProximityGraph& g, std::span<const Label> labels, double t_d);

enum class MstWeight {
  RectGap,         // rect_rect_distance between label rectangles
  CenterDistance,  // Euclidean distance between centres
};

/// Kruskal MST; ties broken by (min index, max index).
ProximityGraph build_mst(std::span<const Label> labels, MstWeight weight = MstWeight::RectGap);

/// Splits labels into groups of at most t_num by cutting the longest MST edge of any
/// oversized group until none remain.
std::vector<std::vector<std::size_t>> partition(std::span<const Label> labels, int t_num);

/// Mean distance from each anchor to its nearest other anchor; 0 for fewer than two.
double mean_nearest_neighbor_distance(std::span<const Vec2> anchors);

/// Long-edge threshold: t_d_factor times the mean nearest-neighbour anchor distance.
double long_edge_threshold(std::span<const PointFeature> features, const LayoutConfig& cfg);

/// The configured neighbourhood graph: pruned Delaunay, or the centre-distance MST.
ProximityGraph build_graph(std::span<const Label> labels, GraphKind kind, double t_d);

}  // namespace beamlabel
