#include "beamlabel/svg.hpp"

#include <cstdio>
#include <sstream>

#include "beamlabel/forces.hpp"
#include "beamlabel/scene_io.hpp"

namespace beamlabel {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

struct Page {
  double y_max;
  double x(double v) const { return v; }
  double y(double v) const { return y_max - v; }
};

void rect_el(std::ostringstream& out, const Page& pg, const Rect& r, const char* cls) {
  out << "<rect class=\"" << cls << "\" x=\"" << num(r.x_min) << "\" y=\"" << num(pg.y(r.y_max))
      << "\" width=\"" << num(r.width()) << "\" height=\"" << num(r.height()) << "\"/>\n";
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(std::span<const Label> labels, std::span<const PointFeature> features,
                       const Rect& screen, const SvgOptions& opts) {
  const Page pg{screen.y_max + screen.y_min};
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(screen.width())
      << "mm\" height=\"" << num(screen.height()) << "mm\" viewBox=\"" << num(screen.x_min) << ' '
      << num(screen.y_min) << ' ' << num(screen.width()) << ' ' << num(screen.height())
      << "\">\n"
      << "<style>\n"
      << ".screen{fill:#fff;stroke:#999;stroke-width:0.3}\n"
      << ".feature{fill:#c0392b}\n"
      << ".leader{stroke:#555;stroke-width:0.15}\n"
      << ".label{fill:#f8f8f8;stroke:#2c3e50;stroke-width:0.12}\n"
      << ".text{font-family:monospace;fill:#111}\n"
      << ".edge{stroke:#3498db;stroke-width:0.1;stroke-dasharray:0.6 0.4}\n"
      << ".conflict rect{fill:none;stroke:#e67e22;stroke-width:0.5}\n"
      << "</style>\n";
  rect_el(out, pg, screen, "screen");

  if (opts.graph) {
    out << "<g class=\"graph\">\n";
    for (const auto& e : opts.graph->edges) {
      const Vec2 a = labels[e.a].rect.center();
      const Vec2 b = labels[e.b].rect.center();
      out << "<line class=\"edge\" x1=\"" << num(a.x) << "\" y1=\"" << num(pg.y(a.y)) << "\" x2=\""
          << num(b.x) << "\" y2=\"" << num(pg.y(b.y)) << "\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g class=\"leaders\">\n";
  for (std::size_t i = 0; i < labels.size() && i < features.size(); ++i) {
    const Label& l = labels[i];
    if (l.deleted) continue;
    const Vec2 a = features[i].anchor;
    out << "<line class=\"leader\" x1=\"" << num(a.x) << "\" y1=\"" << num(pg.y(a.y)) << "\" x2=\""
        << num(l.conn.x) << "\" y2=\"" << num(pg.y(l.conn.y)) << "\"/>\n";
  }
  out << "</g>\n<g class=\"features\">\n";
  for (const auto& f : features) {
    out << "<circle class=\"feature\" cx=\"" << num(f.anchor.x) << "\" cy=\"" << num(pg.y(f.anchor.y))
        << "\" r=\"" << num(f.symbol_radius) << "\"><title>" << xml_escape(f.id)
        << "</title></circle>\n";
  }
  out << "</g>\n<g class=\"labels\">\n";
  for (const auto& l : labels) {
    if (l.deleted) continue;
    rect_el(out, pg, l.rect, "label");
  }
  for (std::size_t i = 0; i < labels.size() && i < features.size(); ++i) {
    const Label& l = labels[i];
    if (l.deleted) continue;
    const double size_mm = l.font_size * kMillimetresPerPoint;
    const Vec2 c = l.rect.center();
    out << "<text class=\"text\" x=\"" << num(c.x) << "\" y=\"" << num(pg.y(c.y) + 0.35 * size_mm)
        << "\" font-size=\"" << num(size_mm) << "\" text-anchor=\"middle\">"
        << xml_escape(features[i].text) << "</text>\n";
  }
  out << "</g>\n";

  if (opts.highlight_conflicts) {
    for (const auto& [i, j] : conflicting_label_pairs(labels, opts.d_min)) {
      out << "<g class=\"conflict\">\n";
      rect_el(out, pg, labels[i].rect, "conflict-a");
      rect_el(out, pg, labels[j].rect, "conflict-b");
      out << "</g>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(std::span<const Label> labels, std::span<const PointFeature> features,
               const Rect& screen, const std::filesystem::path& path, const SvgOptions& opts) {
  write_text_file(path, render_svg(labels, features, screen, opts));
}

}  // namespace beamlabel
