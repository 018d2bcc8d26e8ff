#include "beamlabel/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace beamlabel {

namespace {

double normalize_orientation(double o) {
  double r = std::fmod(o, 180.0);
  if (r < 0.0) r += 180.0;
  if (r >= 180.0) r -= 180.0;
  return r;
}

void require_aligned(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw std::invalid_argument("layouts are not index-aligned");
}

}  // namespace

ConflictCounts count_conflicts(std::span<const Label> labels,
                               std::span<const PointFeature> features, double d_min,
                               Ownership own) {
  return {conflicting_label_pairs(labels, d_min).size(),
          conflicting_label_features(labels, features, d_min, own).size()};
}

double direction_deviation(double o, double o_prime) {
  const double diff = std::abs(normalize_orientation(o) - normalize_orientation(o_prime));
  return diff < 90.0 ? diff : 180.0 - diff;
}

double a_ms(std::span<const Label> initial, std::span<const Label> final_labels,
            const ProximityGraph& graph, std::vector<EdgeDeviation>* per_edge) {
  require_aligned(initial, final_labels);
  if (per_edge) per_edge->clear();
  if (graph.edges.empty()) return 0.0;
  double total = 0.0;
  for (const auto& e : graph.edges) {
    const double before =
        undirected_angle_degrees(initial[e.a].rect.center(), initial[e.b].rect.center());
    const double after =
        undirected_angle_degrees(final_labels[e.a].rect.center(), final_labels[e.b].rect.center());
    const double dev = direction_deviation(before, after);
    total += dev;
    if (per_edge) per_edge->push_back({e.a, e.b, dev});
  }
  return total / static_cast<double>(graph.edges.size());
}

double d_sum(std::span<const Label> initial, std::span<const Label> final_labels) {
  require_aligned(initial, final_labels);
  double mm = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (final_labels[i].deleted) continue;
    mm += (final_labels[i].rect.center() - initial[i].rect.center()).norm();
  }
  return mm / 10.0;
}

MetricsReport evaluate(std::span<const Label> initial, std::span<const Label> final_labels,
                       std::span<const PointFeature> features, const LayoutConfig& cfg,
                       double seconds) {
  MetricsReport r;
  const ConflictCounts c = count_conflicts(final_labels, features, cfg.d_min);
  r.n_rr = c.label_label;
  r.n_rp = c.label_feature;
  r.d_sum_cm = d_sum(initial, final_labels);
  const ProximityGraph g =
      build_graph(initial, cfg.graph_kind, long_edge_threshold(features, cfg));
  r.graph_edges = g.edges.size();
  r.a_ms_deg = a_ms(initial, final_labels, g, &r.per_edge);
  r.seconds = seconds;
  return r;
}

}  // namespace beamlabel
