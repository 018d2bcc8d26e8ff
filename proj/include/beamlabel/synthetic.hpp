#pragma once

#include <cstdint>
#include <string>

#include "beamlabel/scene_io.hpp"

namespace beamlabel {

enum class Density { Uniform, Clustered };
enum class Script { Ascii, Cjk };

struct SyntheticProfile {
  Density density = Density::Uniform;
  Script script = Script::Ascii;
};

Density parse_density(const std::string& s);
Script parse_script(const std::string& s);

/// Deterministic pseudo-random scene; the same (n, seed, screen, profile) always yields
/// the same features. Uses default config values otherwise.
Scene generate_synthetic(std::size_t n, std::uint64_t seed, const Rect& screen = {0, 0, 250, 150},
                         const SyntheticProfile& profile = {});

/// ASCII stand-in for a label text: every double-width glyph becomes one Latin letter.
std::string ascii_transliteration(const std::string& text);

}  // namespace beamlabel
