#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "beamlabel/beam_params.hpp"
#include "beamlabel/geometry.hpp"
#include "beamlabel/proximity.hpp"

namespace beamlabel {

class ZeroLengthEdge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ElementMatrix = Eigen::Matrix<double, 6, 6>;

struct NodalDisplacement {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;

  Vec2 translation() const { return {dx, dy}; }
};

struct DisplacementField {
  std::vector<NodalDisplacement> nodes;
};

/// Euler-Bernoulli frame element over DOFs (u1, v1, theta1, u2, v2, theta2) in global
/// coordinates for a member of the given length and bearing (radians, from node 1 to 2).
ElementMatrix element_stiffness(double length, double angle, const BeamParams& params);

/// Element for the member from a to b. Throws ZeroLengthEdge when a == b.
ElementMatrix element_stiffness(Vec2 a, Vec2 b, const BeamParams& params);

/// Global stiffness: every edge element plus the ground spring on each DOF
/// (k_g on translations, k_g * 1 mm^2 on rotations).
Eigen::MatrixXd assemble_stiffness(const ProximityGraph& graph, const BeamParams& params);

/// Solves K d = f for nodal forces f (no applied moments), one connected component at a
/// time. No step cap.
DisplacementField solve_uncapped(const ProximityGraph& graph, std::span<const Vec2> forces,
                                 const BeamParams& params);

/// Scales each node's translation down to at most max_step, keeping its direction.
void cap_translations(DisplacementField& field, double max_step);

DisplacementField solve_displacements(const ProximityGraph& graph, std::span<const Vec2> forces,
                                      const BeamParams& params, double max_step);

}  // namespace beamlabel
