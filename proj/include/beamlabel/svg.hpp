#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "beamlabel/proximity.hpp"
#include "beamlabel/scene.hpp"

namespace beamlabel {

struct SvgOptions {
  const ProximityGraph* graph = nullptr;  // edge overlay, indices into labels
  bool highlight_conflicts = true;
  double d_min = 0.2;
};

/// SVG 1.1 document, one user unit per millimetre, y axis pointing up on the page.
std::string render_svg(std::span<const Label> labels, std::span<const PointFeature> features,
                       const Rect& screen, const SvgOptions& opts = {});

void write_svg(std::span<const Label> labels, std::span<const PointFeature> features,
               const Rect& screen, const std::filesystem::path& path, const SvgOptions& opts = {});

std::string xml_escape(const std::string& s);

}  // namespace beamlabel
