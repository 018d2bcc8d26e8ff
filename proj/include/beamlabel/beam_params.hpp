#pragma once

#include <optional>

namespace beamlabel {

/// Material constants of the beam network plus the per-node ground spring.
/// Units are mm-based; forces are expressed as millimetres of required travel.
struct BeamParams {
  double elastic_modulus = 1.0;    // E
  double cross_section = 1.0;      // A, mm^2
  double moment_of_inertia = 1.0;  // I, mm^4
  double ground_stiffness = 1.0;   // k_g, per translational DOF
  // Per-iteration translation cap; unset means 2 * d_min.
  std::optional<double> max_step;
  // Elements shorter than this are stiffened as if they had this length.
  double min_element_length = 0.1;

  /// Throws std::invalid_argument unless every constant is strictly positive.
  void validate() const;
};

}  // namespace beamlabel
