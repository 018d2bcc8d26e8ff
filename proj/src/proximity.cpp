#include "beamlabel/proximity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace beamlabel {

namespace {

using i128 = __int128;

struct IPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const IPoint&) const = default;
  auto operator<=>(const IPoint&) const = default;
};

// Exact on the fixed-point lattice; coordinate spans stay below ~4e9 quanta so the
// incircle determinant fits in 128 bits.
int orient(const IPoint& a, const IPoint& b, const IPoint& c) {
  const i128 det = i128(b.x - a.x) * i128(c.y - a.y) - i128(b.y - a.y) * i128(c.x - a.x);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

// > 0 when d lies strictly inside the circumcircle of the counter-clockwise triangle abc.
int incircle(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  const i128 adx = a.x - d.x, ady = a.y - d.y;
  const i128 bdx = b.x - d.x, bdy = b.y - d.y;
  const i128 cdx = c.x - d.x, cdy = c.y - d.y;
  const i128 alift = adx * adx + ady * ady;
  const i128 blift = bdx * bdx + bdy * bdy;
  const i128 clift = cdx * cdx + cdy * cdy;
  const i128 det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                   clift * (adx * bdy - bdx * ady);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

std::vector<IPoint> quantize(std::span<const Vec2> points) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (const Vec2& p : points) {
    if (!p.is_finite()) throw std::invalid_argument("delaunay_edges: non-finite point");
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double span = std::max(x1 - x0, y1 - y0);
  const double quantum = std::max(1e-6, span / 2.0e9);
  std::vector<IPoint> q(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    q[i] = {std::llround((points[i].x - x0) / quantum), std::llround((points[i].y - y0) / quantum)};
  }
  // Separate coincident lattice points; earlier indices keep their position.
  std::set<IPoint> taken;
  for (auto& p : q) {
    while (!taken.insert(p).second) {
      ++p.x;
      ++p.y;
    }
  }
  return q;
}

class Triangulator {
 public:
  explicit Triangulator(std::vector<IPoint> pts) : pts_(std::move(pts)) {}

  std::vector<std::pair<std::size_t, std::size_t>> run() {
    const std::size_t n = pts_.size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n < 2) return out;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pts_[a] < pts_[b];
    });

    std::size_t k = 2;
    while (k < n && orient(pts_[order[0]], pts_[order[1]], pts_[order[k]]) == 0) ++k;
    if (k == n) {
      // Collinear: the lexicographic order runs along the line.
      for (std::size_t i = 0; i + 1 < n; ++i) out.emplace_back(order[i], order[i + 1]);
      return normalize(out);
    }

    const std::size_t apex = order[k];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const std::size_t u = order[i], v = order[i + 1];
      if (orient(pts_[u], pts_[v], pts_[apex]) > 0) {
        add_triangle(u, v, apex);
      } else {
        add_triangle(v, u, apex);
      }
    }
    if (orient(pts_[order[0]], pts_[order[1]], pts_[apex]) > 0) {
      for (std::size_t i = 0; i < k; ++i) hull_.push_back(order[i]);
      hull_.push_back(apex);
    } else {
      hull_.push_back(order[0]);
      hull_.push_back(apex);
      for (std::size_t i = k - 1; i >= 1; --i) hull_.push_back(order[i]);
    }
    legalize_all();

    for (std::size_t idx = k + 1; idx < n; ++idx) insert_outside(order[idx]);

    for (const auto& t : tris_) {
      if (!t.alive) continue;
      for (int e = 0; e < 3; ++e) {
        const std::size_t u = t.v[e], v = t.v[(e + 1) % 3];
        if (u < v) out.emplace_back(u, v);
      }
    }
    // Hull edges appear in only one triangle and may be oriented v < u there.
    for (std::size_t i = 0; i < hull_.size(); ++i) {
      const std::size_t u = hull_[i], v = hull_[(i + 1) % hull_.size()];
      out.emplace_back(std::min(u, v), std::max(u, v));
    }
    return normalize(out);
  }

 private:
  struct Tri {
    std::array<std::size_t, 3> v{};
    bool alive = true;
  };

  static std::vector<std::pair<std::size_t, std::size_t>> normalize(
      std::vector<std::pair<std::size_t, std::size_t>> e) {
    for (auto& [a, b] : e)
      if (a > b) std::swap(a, b);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
  }

  std::uint64_t key(std::size_t u, std::size_t v) const {
    return static_cast<std::uint64_t>(u) * pts_.size() + v;
  }

  void add_triangle(std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t id = tris_.size();
    tris_.push_back({{a, b, c}, true});
    register_tri(id);
  }

  void register_tri(std::size_t id) {
    const auto& v = tris_[id].v;
    for (int e = 0; e < 3; ++e) {
      edge_owner_[key(v[e], v[(e + 1) % 3])] = id;
      pending_.emplace_back(v[e], v[(e + 1) % 3]);
    }
  }

  void unregister_tri(std::size_t id) {
    const auto& v = tris_[id].v;
    for (int e = 0; e < 3; ++e) edge_owner_.erase(key(v[e], v[(e + 1) % 3]));
  }

  static std::size_t opposite(const Tri& t, std::size_t u, std::size_t v) {
    for (std::size_t w : t.v)
      if (w != u && w != v) return w;
    return t.v[0];
  }

  void legalize_all() {
    while (!pending_.empty()) {
      const auto [u, v] = pending_.back();
      pending_.pop_back();
      const auto it1 = edge_owner_.find(key(u, v));
      const auto it2 = edge_owner_.find(key(v, u));
      if (it1 == edge_owner_.end() || it2 == edge_owner_.end()) continue;
      const std::size_t t1 = it1->second, t2 = it2->second;
      const std::size_t a = opposite(tris_[t1], u, v);
      const std::size_t b = opposite(tris_[t2], v, u);
      // t1 = (u, v, a) and t2 = (v, u, b), both counter-clockwise.
      if (incircle(pts_[u], pts_[v], pts_[a], pts_[b]) <= 0) continue;
      unregister_tri(t1);
      unregister_tri(t2);
      tris_[t1].v = {u, b, a};
      tris_[t2].v = {b, v, a};
      register_tri(t1);
      register_tri(t2);
    }
  }

  void insert_outside(std::size_t p) {
    const std::size_t h = hull_.size();
    std::vector<bool> visible(h);
    bool any = false;
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orient(pts_[hull_[i]], pts_[hull_[(i + 1) % h]], pts_[p]) < 0;
      any = any || visible[i];
    }
    if (!any) throw std::logic_error("delaunay: inserted point sees no hull edge");

    // Visible edges form one cyclic run; find its first edge.
    std::size_t start = 0;
    while (!(visible[start] && !visible[(start + h - 1) % h])) ++start;
    std::size_t count = 0;
    while (visible[(start + count) % h]) {
      const std::size_t i = (start + count) % h;
      add_triangle(hull_[(i + 1) % h], hull_[i], p);
      ++count;
    }

    std::vector<std::size_t> next;
    next.reserve(h + 1);
    // Keep hull_[start], drop the interior vertices of the visible run, insert p.
    for (std::size_t j = 0; j < h; ++j) {
      const std::size_t i = (start + count + j) % h;  // first vertex after the run
      next.push_back(hull_[i]);
      if (i == start) break;
    }
    next.push_back(p);
    hull_ = std::move(next);
    legalize_all();
  }

  std::vector<IPoint> pts_;
  std::vector<Tri> tris_;
  std::unordered_map<std::uint64_t, std::size_t> edge_owner_;
  std::vector<std::pair<std::size_t, std::size_t>> pending_;
  std::vector<std::size_t> hull_;  // counter-clockwise
};

GraphEdge make_edge(const std::vector<Vec2>& pos, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  GraphEdge e{a, b, (pos[b] - pos[a]).norm(), undirected_angle_degrees(pos[a], pos[b])};
  if (!(e.rest_length > 0.0)) {
    // Coincident centres: keep the edge usable with the jitter scale and a fixed bearing.
    e.rest_length = 1e-9;
    e.rest_direction = 45.0;
  }
  return e;
}

std::vector<Vec2> centers_of(std::span<const Label> labels) {
  std::vector<Vec2> c;
  c.reserve(labels.size());
  for (const auto& l : labels) c.push_back(l.rect.center());
  return c;
}

struct DisjointSet {
  std::vector<std::size_t> parent, size;
  explicit DisjointSet(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
};

struct WeightedEdge {
  double w;
  std::size_t a, b;
};

std::vector<WeightedEdge> kruskal(std::size_t n, std::vector<WeightedEdge> all) {
  std::sort(all.begin(), all.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  DisjointSet ds(n);
  std::vector<WeightedEdge> tree;
  for (const auto& e : all) {
    if (ds.unite(e.a, e.b)) tree.push_back(e);
    if (tree.size() + 1 == n) break;
  }
  return tree;
}

std::vector<WeightedEdge> mst_edges(std::span<const Label> labels, MstWeight weight) {
  const std::size_t n = labels.size();
  std::vector<WeightedEdge> all;
  all.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = weight == MstWeight::RectGap
                           ? rect_rect_distance(labels[i].rect, labels[j].rect)
                           : (labels[j].rect.center() - labels[i].rect.center()).norm();
      all.push_back({w, i, j});
    }
  }
  return kruskal(n, std::move(all));
}

}  // namespace

bool ProximityGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::any_of(edges.begin(), edges.end(),
                     [&](const GraphEdge& e) { return e.a == a && e.b == b; });
}

std::vector<std::vector<std::size_t>> ProximityGraph::components() const {
  DisjointSet ds(node_count());
  for (const auto& e : edges) ds.unite(e.a, e.b);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(node_count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < node_count(); ++i) {
    const std::size_t r = ds.find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

std::vector<std::pair<std::size_t, std::size_t>> delaunay_edges(std::span<const Vec2> points) {
  if (points.size() < 2) return {};
  return Triangulator(quantize(points)).run();
}

ProximityGraph build_dt(std::span<const Label> labels) {
  ProximityGraph g;
  g.positions = centers_of(labels);
  for (const auto& [a, b] : delaunay_edges(g.positions)) g.edges.push_back(make_edge(g.positions, a, b));
  return g;
}

ProximityGraph prune(const ProximityGraph& g, std::span<const Label> labels, double t_d) {
  ProximityGraph out;
  out.positions = g.positions;
  for (const auto& e : g.edges) {
    if (e.rest_length > t_d) continue;
    bool blocked = false;
    for (std::size_t k = 0; k < labels.size() && !blocked; ++k) {
      if (k == e.a || k == e.b || labels[k].deleted) continue;
      blocked = segment_crosses_interior(g.positions[e.a], g.positions[e.b], labels[k].rect);
    }
    if (!blocked) out.edges.push_back(e);
  }
  return out;
}

ProximityGraph build_mst(std::span<const Label> labels, MstWeight weight) {
  ProximityGraph g;
  g.positions = centers_of(labels);
  if (labels.size() < 2) return g;
  for (const auto& e : mst_edges(labels, weight)) g.edges.push_back(make_edge(g.positions, e.a, e.b));
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return g;
}

std::vector<std::vector<std::size_t>> partition(std::span<const Label> labels, int t_num) {
  if (t_num < 1) throw std::invalid_argument("partition: t_num must be >= 1");
  const std::size_t n = labels.size();
  const std::size_t limit = static_cast<std::size_t>(t_num);
  std::vector<WeightedEdge> kept = n < 2 ? std::vector<WeightedEdge>{}
                                         : mst_edges(labels, MstWeight::RectGap);

  auto group = [&]() {
    DisjointSet ds(n);
    for (const auto& e : kept) ds.unite(e.a, e.b);
    return ds;
  };

  while (true) {
    DisjointSet ds = group();
    std::ptrdiff_t worst = -1;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (ds.size[ds.find(kept[i].a)] <= limit) continue;
      if (worst < 0) {
        worst = static_cast<std::ptrdiff_t>(i);
        continue;
      }
      const auto& w = kept[static_cast<std::size_t>(worst)];
      const auto& c = kept[i];
      if (c.w > w.w || (c.w == w.w && std::pair(c.a, c.b) < std::pair(w.a, w.b))) {
        worst = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (worst < 0) break;
    kept.erase(kept.begin() + worst);
  }

  ProximityGraph forest;
  forest.positions.resize(n);
  for (const auto& e : kept) forest.edges.push_back({e.a, e.b, 1.0, 0.0});
  return forest.components();
}

double mean_nearest_neighbor_distance(std::span<const Vec2> anchors) {
  const std::size_t n = anchors.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) best = std::min(best, (anchors[j] - anchors[i]).norm());
    }
    total += best;
  }
  return total / static_cast<double>(n);
}

double long_edge_threshold(std::span<const PointFeature> features, const LayoutConfig& cfg) {
  std::vector<Vec2> anchors;
  anchors.reserve(features.size());
  for (const auto& f : features) anchors.push_back(f.anchor);
  return cfg.t_d_factor * mean_nearest_neighbor_distance(anchors);
}

ProximityGraph build_graph(std::span<const Label> labels, GraphKind kind, double t_d) {
  if (kind == GraphKind::MST) return build_mst(labels, MstWeight::CenterDistance);
  return prune(build_dt(labels), labels, t_d);
}

}  // namespace beamlabel
