#include "beamlabel/beams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace beamlabel {

namespace {

double edge_angle(const ProximityGraph& g, const GraphEdge& e) {
  const Vec2 d = g.positions[e.b] - g.positions[e.a];
  if (d.squared_norm() > 0.0) return std::atan2(d.y, d.x);
  return e.rest_direction * std::numbers::pi / 180.0;
}

double edge_length(const ProximityGraph& g, const GraphEdge& e) {
  const double l = (g.positions[e.b] - g.positions[e.a]).norm();
  return l > 0.0 ? l : e.rest_length;
}

// Assembles the stiffness of the subgraph induced by `nodes` (sorted), where local[i]
// maps a graph node to its position in `nodes`.
Eigen::MatrixXd assemble_subset(const ProximityGraph& g, const BeamParams& p,
                                const std::vector<std::size_t>& nodes,
                                const std::vector<std::ptrdiff_t>& local) {
  const Eigen::Index dofs = static_cast<Eigen::Index>(3 * nodes.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dofs, dofs);
  for (const auto& e : g.edges) {
    const std::ptrdiff_t la = local[e.a];
    const std::ptrdiff_t lb = local[e.b];
    if (la < 0 || lb < 0) continue;
    const ElementMatrix ke = element_stiffness(edge_length(g, e), edge_angle(g, e), p);
    const std::array<Eigen::Index, 2> base{3 * la, 3 * lb};
    for (int bi = 0; bi < 2; ++bi)
      for (int bj = 0; bj < 2; ++bj)
        k.block<3, 3>(base[bi], base[bj]) += ke.block<3, 3>(3 * bi, 3 * bj);
  }
  for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(nodes.size()); ++n) {
    k(3 * n, 3 * n) += p.ground_stiffness;
    k(3 * n + 1, 3 * n + 1) += p.ground_stiffness;
    k(3 * n + 2, 3 * n + 2) += p.ground_stiffness;  // k_g * 1 mm^2
  }
  return k;
}

}  // namespace

ElementMatrix element_stiffness(double length, double angle, const BeamParams& params) {
  if (!(length > 0.0)) throw ZeroLengthEdge("element_stiffness: zero-length member");
  const double l = std::max(length, params.min_element_length);
  const double ea = params.elastic_modulus * params.cross_section / l;
  const double ei = params.elastic_modulus * params.moment_of_inertia;
  const double k1 = 12.0 * ei / (l * l * l);
  const double k2 = 6.0 * ei / (l * l);
  const double k3 = 4.0 * ei / l;
  const double k4 = 2.0 * ei / l;

  ElementMatrix local;
  // clang-format off
  local <<  ea,   0,   0, -ea,   0,   0,
             0,  k1,  k2,   0, -k1,  k2,
             0,  k2,  k3,   0, -k2,  k4,
           -ea,   0,   0,  ea,   0,   0,
             0, -k1, -k2,   0,  k1, -k2,
             0,  k2,  k4,   0, -k2,  k3;
  // clang-format on

  const double c = std::cos(angle);
  const double s = std::sin(angle);
  ElementMatrix t = ElementMatrix::Zero();
  for (int blk = 0; blk < 2; ++blk) {
    const int o = 3 * blk;
    t(o, o) = c;
    t(o, o + 1) = s;
    t(o + 1, o) = -s;
    t(o + 1, o + 1) = c;
    t(o + 2, o + 2) = 1.0;
  }
  ElementMatrix global = t.transpose() * local * t;
  // Symmetrize away rounding so the assembled system stays exactly symmetric.
  return 0.5 * (global + global.transpose());
}

ElementMatrix element_stiffness(Vec2 a, Vec2 b, const BeamParams& params) {
  const Vec2 d = b - a;
  if (d.squared_norm() == 0.0) throw ZeroLengthEdge("element_stiffness: coincident end nodes");
  return element_stiffness(d.norm(), std::atan2(d.y, d.x), params);
}

Eigen::MatrixXd assemble_stiffness(const ProximityGraph& graph, const BeamParams& params) {
  std::vector<std::size_t> nodes(graph.node_count());
  std::vector<std::ptrdiff_t> local(graph.node_count());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i] = i;
    local[i] = static_cast<std::ptrdiff_t>(i);
  }
  return assemble_subset(graph, params, nodes, local);
}

DisplacementField solve_uncapped(const ProximityGraph& graph, std::span<const Vec2> forces,
                                 const BeamParams& params) {
  params.validate();
  if (forces.size() != graph.node_count()) {
    throw std::invalid_argument("solve_displacements: force count differs from node count");
  }
  for (const Vec2& f : forces) {
    if (!f.is_finite()) throw std::invalid_argument("solve_displacements: non-finite force");
  }

  DisplacementField out;
  out.nodes.assign(graph.node_count(), {});
  std::vector<std::ptrdiff_t> local(graph.node_count(), -1);

  for (const auto& comp : graph.components()) {
    bool loaded = false;
    for (std::size_t n : comp) loaded = loaded || forces[n] != Vec2{};
    if (!loaded) continue;

    if (comp.size() == 1) {
      const std::size_t n = comp.front();
      out.nodes[n] = {forces[n].x / params.ground_stiffness, forces[n].y / params.ground_stiffness,
                      0.0};
      continue;
    }

    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<std::ptrdiff_t>(i);
    const Eigen::MatrixXd k = assemble_subset(graph, params, comp, local);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(k.rows());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      f(static_cast<Eigen::Index>(3 * i)) = forces[comp[i]].x;
      f(static_cast<Eigen::Index>(3 * i + 1)) = forces[comp[i]].y;
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(k);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw SingularSystem("solve_displacements: stiffness matrix is not positive definite");
    }
    const Eigen::VectorXd d = ldlt.solve(f);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto b = static_cast<Eigen::Index>(3 * i);
      out.nodes[comp[i]] = {d(b), d(b + 1), d(b + 2)};
      local[comp[i]] = -1;
    }
  }
  return out;
}

void cap_translations(DisplacementField& field, double max_step) {
  for (auto& n : field.nodes) {
    const double len = std::hypot(n.dx, n.dy);
    if (len > max_step) {
      const double s = max_step / len;
      n.dx *= s;
      n.dy *= s;
    }
  }
}

DisplacementField solve_displacements(const ProximityGraph& graph, std::span<const Vec2> forces,
                                      const BeamParams& params, double max_step) {
  DisplacementField d = solve_uncapped(graph, forces, params);
  cap_translations(d, max_step);
  return d;
}

}  // namespace beamlabel
