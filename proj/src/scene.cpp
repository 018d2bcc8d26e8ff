#include "beamlabel/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace beamlabel {

void BeamParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(elastic_modulus) || !positive(cross_section) || !positive(moment_of_inertia) ||
      !positive(ground_stiffness) || !positive(min_element_length) ||
      (max_step && !positive(*max_step))) {
    throw std::invalid_argument("BeamParams: all constants must be strictly positive");
  }
}

void LayoutConfig::validate() const {
  if (!(d_min > 0.0)) throw SceneError("config: d_min must be > 0");
  if (!(w_min > 0.0) || !(w_min <= w_max)) throw SceneError("config: need 0 < w_min <= w_max");
  if (!(t_d_factor > 0.0)) throw SceneError("config: t_d_factor must be > 0");
  if (!(t_f_factor > 0.0)) throw SceneError("config: t_f_factor must be > 0");
  if (!(force_margin_factor >= 0.0)) throw SceneError("config: force_margin_factor must be >= 0");
  if (!(step_damping > 0.0 && step_damping <= 1.0)) throw SceneError("config: step_damping must be in (0, 1]");
  if (!(step_recovery >= 1.0)) throw SceneError("config: step_recovery must be >= 1");
  if (!(escape_reach > 0.0)) throw SceneError("config: escape reach must be > 0");
  if (stall_steps < 0 || balance_steps < 0) throw SceneError("config: stall counts must be >= 0");
  if (!(stall_progress >= 0.0 && stall_progress < 1.0)) {
    throw SceneError("config: stall_progress must be in [0, 1)");
  }
  if (!(leader.length > 0.0)) throw SceneError("config: leader length must be > 0");
  if (!(leader.direction >= 0.0 && leader.direction < 360.0)) {
    throw SceneError("config: leader direction must be in [0, 360)");
  }
  if (t_s_override && *t_s_override < 1) throw SceneError("config: t_s must be >= 1");
  if (t_num && *t_num < 1) throw SceneError("config: t_num must be >= 1");
  if (!(label_padding >= 0.0)) throw SceneError("config: label_padding must be >= 0");
  if (!(screen.width() > 0.0 && screen.height() > 0.0)) throw SceneError("config: empty screen");
  try {
    beam.validate();
  } catch (const std::invalid_argument& e) {
    throw SceneError(std::string("config: ") + e.what());
  }
}

bool is_double_width(char32_t cp) {
  return (cp >= 0x3000 && cp <= 0x303F) ||    // CJK symbols and punctuation
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0x4E00 && cp <= 0x9FFF) ||    // unified ideographs
         (cp >= 0xFF00 && cp <= 0xFF60) ||    // fullwidth forms
         (cp >= 0xFFE0 && cp <= 0xFFE6) ||
         (cp >= 0x20000 && cp <= 0x2FA1F);    // supplementary ideographs
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw SceneError("malformed UTF-8 lead byte");
    }
    if (i + extra >= text.size() && extra > 0) throw SceneError("truncated UTF-8 sequence");
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) throw SceneError("malformed UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

TextExtent measure_text(std::string_view text, double font_size_pt) {
  if (text.empty()) throw SceneError("measure_text: empty label text");
  if (!(font_size_pt > 0.0)) throw SceneError("measure_text: font size must be > 0");
  const double em = font_size_pt * kMillimetresPerPoint;
  double advance = 0.0;
  for (char32_t cp : decode_utf8(text)) advance += is_double_width(cp) ? 1.0 : 0.6;
  return {advance * em, 1.2 * em};
}

double font_size_for(const PointFeature& feature, double d_nearest, const LayoutConfig& cfg) {
  const double w = cfg.w_max * d_nearest / feature.depth;
  return std::clamp(w, cfg.w_min, cfg.w_max);
}

std::vector<Label> initial_layout(std::span<const PointFeature> features, const LayoutConfig& cfg) {
  if (features.empty()) throw SceneError("initial_layout: no features");
  double d_nearest = std::numeric_limits<double>::infinity();
  for (const auto& f : features) {
    if (!(f.depth > 0.0)) throw SceneError("feature '" + f.id + "': depth must be > 0");
    d_nearest = std::min(d_nearest, f.depth);
  }

  const Vec2 dir = cfg.leader.unit();
  std::vector<Label> labels;
  labels.reserve(features.size());
  for (const auto& f : features) {
    const double font = font_size_for(f, d_nearest, cfg);
    const TextExtent ext = measure_text(f.text, font);
    const double w = ext.width + 2.0 * cfg.label_padding;
    const double h = ext.height + 2.0 * cfg.label_padding;
    const Vec2 tip = f.anchor + dir * cfg.leader.length;
    const Vec2 origin{tip.x - cfg.leader.attach_u * w, tip.y - cfg.leader.attach_v * h};
    Label label;
    label.feature_id = f.id;
    label.rect = Rect(origin.x, origin.y, origin.x + w, origin.y + h);
    label.conn = tip;
    label.font_size = font;
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace beamlabel
