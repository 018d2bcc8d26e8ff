#include "beamlabel/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace beamlabel {

namespace {

// Fixed-width draws keep output identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  double gaussian() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

constexpr const char* kCjkGlyphs[] = {
    "北", "京", "东", "西", "南", "路", "街", "门", "大", "厦", "广", "场", "中", "心",
    "公", "园", "站", "桥", "口", "店", "馆", "楼", "院", "府", "井", "王", "市", "城",
    "新", "华", "书", "医", "学", "银", "行", "酒", "宾", "餐", "厅", "超", "百", "货"};

constexpr char kAsciiGlyphs[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

std::string random_text(Rng& rng, Script script) {
  const std::size_t len = 4 + rng.index(11);
  std::string s;
  if (script == Script::Cjk) {
    for (std::size_t i = 0; i < len; ++i) s += kCjkGlyphs[rng.index(std::size(kCjkGlyphs))];
    return s;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const bool inner = i > 0 && i + 1 < len && s.back() != ' ';
    if (inner && rng.uniform() < 0.12) {
      s += ' ';
    } else {
      s += kAsciiGlyphs[rng.index(std::size(kAsciiGlyphs) - 1)];
    }
  }
  return s;
}

}  // namespace

Density parse_density(const std::string& s) {
  if (s == "uniform") return Density::Uniform;
  if (s == "clustered") return Density::Clustered;
  throw SceneError("density must be 'uniform' or 'clustered', got '" + s + "'");
}

Script parse_script(const std::string& s) {
  if (s == "ascii") return Script::Ascii;
  if (s == "cjk") return Script::Cjk;
  throw SceneError("script must be 'ascii' or 'cjk', got '" + s + "'");
}

Scene generate_synthetic(std::size_t n, std::uint64_t seed, const Rect& screen,
                         const SyntheticProfile& profile) {
  if (n == 0) throw SceneError("n must be >= 1");
  Rng rng(seed);
  Scene scene;
  scene.config.screen = screen;

  // Labels hang above their anchors, so leave more room at the top.
  const double side = std::min(5.0, 0.1 * screen.width());
  const double bottom = std::min(5.0, 0.1 * screen.height());
  const double top = std::min(20.0, 0.25 * screen.height());
  const Rect area(screen.x_min + side, screen.y_min + bottom, screen.x_max - side,
                  screen.y_max - top);

  std::vector<Vec2> centres;
  double spread = 0.0;
  if (profile.density == Density::Clustered) {
    const std::size_t k = std::max<std::size_t>(1, n / 12);
    for (std::size_t c = 0; c < k; ++c) {
      centres.push_back({rng.uniform(area.x_min, area.x_max), rng.uniform(area.y_min, area.y_max)});
    }
    spread = 0.08 * std::min(area.width(), area.height());
  }

  for (std::size_t i = 0; i < n; ++i) {
    PointFeature f;
    f.id = "f" + std::to_string(i);
    if (centres.empty()) {
      f.anchor = {rng.uniform(area.x_min, area.x_max), rng.uniform(area.y_min, area.y_max)};
    } else {
      const Vec2 c = centres[rng.index(centres.size())];
      const double gx = rng.gaussian();
      const double gy = rng.gaussian();
      f.anchor = area.clamp({c.x + spread * gx, c.y + spread * gy});
    }
    f.depth = std::exp(rng.uniform(std::log(50.0), std::log(500.0)));
    f.text = random_text(rng, profile.script);
    scene.features.push_back(std::move(f));
  }
  return scene;
}

std::string ascii_transliteration(const std::string& text) {
  std::string out;
  for (char32_t cp : decode_utf8(text)) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else {
      out += static_cast<char>('A' + cp % 26);
    }
  }
  return out;
}

}  // namespace beamlabel
