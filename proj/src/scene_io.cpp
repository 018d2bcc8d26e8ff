#include "beamlabel/scene_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace beamlabel {

using nlohmann::json;

namespace {

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw SceneError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SceneError(join(where, key) + ": missing required field");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw SceneError(path + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& where, double def) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return def;
  return number_at(*it, join(where, key));
}

std::optional<int> optional_count(const json& obj, const std::string& key,
                                  const std::string& where, std::optional<int> def) {
  const auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw SceneError(join(where, key) + ": expected an integer or null");
  return it->get<int>();
}

int count_or(const json& obj, const std::string& key, const std::string& where, int def) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return def;
  if (!it->is_number_integer()) throw SceneError(join(where, key) + ": expected an integer");
  return it->get<int>();
}

bool flag_or(const json& obj, const std::string& key, const std::string& where, bool def) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return def;
  if (!it->is_boolean()) throw SceneError(join(where, key) + ": expected true or false");
  return it->get<bool>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw SceneError(path + ": expected a string");
  return v.get<std::string>();
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError("syntax error at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
}

Rect screen_from_json(const json& doc) {
  const json& s = require(doc, "screen", "");
  const double w = number_at(require(s, "width_mm", "screen"), "screen.width_mm");
  const double h = number_at(require(s, "height_mm", "screen"), "screen.height_mm");
  if (!(w > 0.0 && h > 0.0)) throw SceneError("screen: width_mm and height_mm must be > 0");
  return Rect(0.0, 0.0, w, h);
}

void check_version(const json& doc) {
  const std::string v = string_at(require(doc, "schema_version", ""), "schema_version");
  if (v != kSchemaVersion) {
    throw SceneError("schema_version: unsupported version '" + v + "' (expected " +
                     kSchemaVersion + ")");
  }
}

json label_to_json(const Label& l) {
  return {{"feature_id", l.feature_id}, {"x_min_mm", l.rect.x_min}, {"y_min_mm", l.rect.y_min},
          {"x_max_mm", l.rect.x_max},   {"y_max_mm", l.rect.y_max}, {"conn_x_mm", l.conn.x},
          {"conn_y_mm", l.conn.y},      {"font_size_pt", l.font_size}, {"deleted", l.deleted}};
}

}  // namespace

bool Scene::operator==(const Scene& other) const {
  return scene_to_json(*this) == scene_to_json(other);
}

const char* leader_type_name(LeaderType t) {
  switch (t) {
    case LeaderType::FixedDirFixedConn: return "fixed_dir_fixed_conn";
    case LeaderType::FreeDirFixedConn: return "free_dir_fixed_conn";
    case LeaderType::FreeDirFreeConn: return "free_dir_free_conn";
    case LeaderType::FixedDirFreeConn: return "fixed_dir_free_conn";
  }
  return "?";
}

const char* graph_kind_name(GraphKind k) { return k == GraphKind::DT ? "dt" : "mst"; }

GraphKind parse_graph_kind(const std::string& s) {
  if (s == "dt") return GraphKind::DT;
  if (s == "mst") return GraphKind::MST;
  throw SceneError("graph kind must be 'dt' or 'mst', got '" + s + "'");
}

LeaderType leader_type_from_int(int v) {
  if (v < 1 || v > 4) throw SceneError("leader type must be 1, 2, 3 or 4");
  return static_cast<LeaderType>(v);
}

json config_to_json(const LayoutConfig& c) {
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  return {
      {"d_min_mm", c.d_min},
      {"w_max_pt", c.w_max},
      {"w_min_pt", c.w_min},
      {"leader",
       {{"length_mm", c.leader.length},
        {"direction_deg", c.leader.direction},
        {"type", static_cast<int>(c.leader.type)},
        {"attach_u", c.leader.attach_u},
        {"attach_v", c.leader.attach_v}}},
      {"t_d_factor", c.t_d_factor},
      {"t_s", opt(c.t_s_override)},
      {"t_f_factor", c.t_f_factor},
      {"force_margin_factor", c.force_margin_factor},
      {"step_damping", c.step_damping},
      {"step_recovery", c.step_recovery},
      {"escape",
       {{"enabled", c.escape_stalled},
        {"reach_mm", c.escape_reach},
        {"stall_steps", c.stall_steps},
        {"balance_steps", c.balance_steps},
        {"stall_progress", c.stall_progress}}},
      {"t_num", opt(c.t_num)},
      {"graph", graph_kind_name(c.graph_kind)},
      {"label_padding_mm", c.label_padding},
      {"beam",
       {{"elastic_modulus", c.beam.elastic_modulus},
        {"cross_section", c.beam.cross_section},
        {"moment_of_inertia", c.beam.moment_of_inertia},
        {"ground_stiffness", c.beam.ground_stiffness},
        {"max_step_mm", c.beam.max_step ? json(*c.beam.max_step) : json(nullptr)},
        {"min_element_length_mm", c.beam.min_element_length}}},
  };
}

LayoutConfig config_from_json(const json& j, const Rect& screen, const std::string& where) {
  LayoutConfig c;
  c.screen = screen;
  if (j.is_null()) return c;
  if (!j.is_object()) throw SceneError(where + ": expected an object");
  c.d_min = number_or(j, "d_min_mm", where, c.d_min);
  c.w_max = number_or(j, "w_max_pt", where, c.w_max);
  c.w_min = number_or(j, "w_min_pt", where, c.w_min);
  if (const auto it = j.find("leader"); it != j.end()) {
    const std::string lw = join(where, "leader");
    if (!it->is_object()) throw SceneError(lw + ": expected an object");
    c.leader.length = number_or(*it, "length_mm", lw, c.leader.length);
    c.leader.direction = number_or(*it, "direction_deg", lw, c.leader.direction);
    c.leader.attach_u = number_or(*it, "attach_u", lw, c.leader.attach_u);
    c.leader.attach_v = number_or(*it, "attach_v", lw, c.leader.attach_v);
    if (const auto t = it->find("type"); t != it->end()) {
      if (!t->is_number_integer()) throw SceneError(join(lw, "type") + ": expected 1, 2, 3 or 4");
      try {
        c.leader.type = leader_type_from_int(t->get<int>());
      } catch (const SceneError& e) {
        throw SceneError(join(lw, "type") + ": " + e.what());
      }
    }
  }
  c.t_d_factor = number_or(j, "t_d_factor", where, c.t_d_factor);
  c.t_s_override = optional_count(j, "t_s", where, c.t_s_override);
  c.t_f_factor = number_or(j, "t_f_factor", where, c.t_f_factor);
  c.force_margin_factor = number_or(j, "force_margin_factor", where, c.force_margin_factor);
  c.step_damping = number_or(j, "step_damping", where, c.step_damping);
  c.step_recovery = number_or(j, "step_recovery", where, c.step_recovery);
  if (const auto it = j.find("escape"); it != j.end()) {
    const std::string ew = join(where, "escape");
    if (!it->is_object()) throw SceneError(ew + ": expected an object");
    c.escape_stalled = flag_or(*it, "enabled", ew, c.escape_stalled);
    c.escape_reach = number_or(*it, "reach_mm", ew, c.escape_reach);
    c.stall_steps = count_or(*it, "stall_steps", ew, c.stall_steps);
    c.balance_steps = count_or(*it, "balance_steps", ew, c.balance_steps);
    c.stall_progress = number_or(*it, "stall_progress", ew, c.stall_progress);
  }
  c.t_num = optional_count(j, "t_num", where, c.t_num);
  if (const auto it = j.find("graph"); it != j.end()) {
    try {
      c.graph_kind = parse_graph_kind(string_at(*it, join(where, "graph")));
    } catch (const SceneError& e) {
      throw SceneError(join(where, "graph") + ": " + e.what());
    }
  }
  c.label_padding = number_or(j, "label_padding_mm", where, c.label_padding);
  if (const auto it = j.find("beam"); it != j.end()) {
    const std::string bw = join(where, "beam");
    if (!it->is_object()) throw SceneError(bw + ": expected an object");
    c.beam.elastic_modulus = number_or(*it, "elastic_modulus", bw, c.beam.elastic_modulus);
    c.beam.cross_section = number_or(*it, "cross_section", bw, c.beam.cross_section);
    c.beam.moment_of_inertia = number_or(*it, "moment_of_inertia", bw, c.beam.moment_of_inertia);
    c.beam.ground_stiffness = number_or(*it, "ground_stiffness", bw, c.beam.ground_stiffness);
    c.beam.min_element_length =
        number_or(*it, "min_element_length_mm", bw, c.beam.min_element_length);
    if (const auto m = it->find("max_step_mm"); m != it->end() && !m->is_null()) {
      c.beam.max_step = number_at(*m, join(bw, "max_step_mm"));
    }
  }
  c.validate();
  return c;
}

json scene_to_json(const Scene& scene) {
  json features = json::array();
  for (const auto& f : scene.features) {
    features.push_back({{"id", f.id},
                        {"x_mm", f.anchor.x},
                        {"y_mm", f.anchor.y},
                        {"depth", f.depth},
                        {"text", f.text},
                        {"symbol_radius_mm", f.symbol_radius}});
  }
  return {{"schema_version", kSchemaVersion},
          {"screen", {{"width_mm", scene.config.screen.width()},
                      {"height_mm", scene.config.screen.height()}}},
          {"features", features},
          {"config", config_to_json(scene.config)}};
}

Scene parse_scene(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SceneError("document: expected an object");
  check_version(doc);
  Scene scene;
  const Rect screen = screen_from_json(doc);
  scene.config = config_from_json(doc.contains("config") ? doc.at("config") : json(nullptr), screen);

  const json& fs = require(doc, "features", "");
  if (!fs.is_array()) throw SceneError("features: expected an array");
  if (fs.empty()) throw SceneError("features: at least one feature is required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string w = "features[" + std::to_string(i) + "]";
    const json& fj = fs[i];
    PointFeature f;
    f.id = string_at(require(fj, "id", w), w + ".id");
    if (!seen.insert(f.id).second) throw SceneError(w + ".id: duplicate feature id '" + f.id + "'");
    f.anchor = {number_at(require(fj, "x_mm", w), w + ".x_mm"),
                number_at(require(fj, "y_mm", w), w + ".y_mm")};
    f.depth = number_at(require(fj, "depth", w), w + ".depth");
    f.text = string_at(require(fj, "text", w), w + ".text");
    f.symbol_radius = number_or(fj, "symbol_radius_mm", w, f.symbol_radius);
    if (!(f.depth > 0.0)) throw SceneError(w + ".depth: must be > 0");
    if (f.text.empty()) throw SceneError(w + ".text: must not be empty");
    try {
      decode_utf8(f.text);
    } catch (const SceneError& e) {
      throw SceneError(w + ".text: " + e.what());
    }
    if (!(f.symbol_radius >= 0.0)) throw SceneError(w + ".symbol_radius_mm: must be >= 0");
    if (!screen.contains(f.anchor)) {
      throw SceneError(w + ": feature '" + f.id + "' lies outside the screen");
    }
    scene.features.push_back(std::move(f));
  }
  return scene;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Scene load_scene(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_scene(text);
  } catch (const SceneError& e) {
    throw SceneError(path.string() + ": " + e.what());
  }
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  write_text_file(path, scene_to_json(scene).dump(2) + "\n");
}

json placement_to_json(const std::string& method, std::span<const Label> labels,
                       const Rect& screen, const LayoutConfig& cfg) {
  json ls = json::array();
  for (const auto& l : labels) ls.push_back(label_to_json(l));
  return {{"schema_version", kSchemaVersion},
          {"method", method},
          {"screen", {{"width_mm", screen.width()}, {"height_mm", screen.height()}}},
          {"leader_type", static_cast<int>(cfg.leader.type)},
          {"graph", graph_kind_name(cfg.graph_kind)},
          {"labels", ls}};
}

Placement parse_placement(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SceneError("document: expected an object");
  check_version(doc);
  Placement p;
  p.method = string_at(require(doc, "method", ""), "method");
  const json& ls = require(doc, "labels", "");
  if (!ls.is_array()) throw SceneError("labels: expected an array");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string w = "labels[" + std::to_string(i) + "]";
    const json& lj = ls[i];
    Label l;
    l.feature_id = string_at(require(lj, "feature_id", w), w + ".feature_id");
    try {
      l.rect = Rect(number_at(require(lj, "x_min_mm", w), w + ".x_min_mm"),
                    number_at(require(lj, "y_min_mm", w), w + ".y_min_mm"),
                    number_at(require(lj, "x_max_mm", w), w + ".x_max_mm"),
                    number_at(require(lj, "y_max_mm", w), w + ".y_max_mm"));
    } catch (const std::invalid_argument& e) {
      if (dynamic_cast<const SceneError*>(&e)) throw;
      throw SceneError(w + ": " + e.what());
    }
    l.conn = {number_at(require(lj, "conn_x_mm", w), w + ".conn_x_mm"),
              number_at(require(lj, "conn_y_mm", w), w + ".conn_y_mm")};
    l.font_size = number_at(require(lj, "font_size_pt", w), w + ".font_size_pt");
    const json& del = require(lj, "deleted", w);
    if (!del.is_boolean()) throw SceneError(w + ".deleted: expected a boolean");
    l.deleted = del.get<bool>();
    p.labels.push_back(std::move(l));
  }
  return p;
}

Placement load_placement(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_placement(text);
  } catch (const SceneError& e) {
    throw SceneError(path.string() + ": " + e.what());
  }
}

json metrics_to_json(const MetricsReport& m) {
  return {{"n_rr", m.n_rr},         {"n_rp", m.n_rp},   {"d_sum_cm", m.d_sum_cm},
          {"a_ms_deg", m.a_ms_deg}, {"t_s", m.seconds}, {"graph_edges", m.graph_edges}};
}

json report_to_json(const RunReport& r) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"size", g.size},
                      {"iterations", g.loop.iterations},
                      {"t_s", g.loop.t_s},
                      {"exit", exit_reason_name(g.loop.exit)}});
  }
  json counts = json::object();
  for (const auto& [tag, n] : r.contribution_counts) counts[tag] = n;
  return {{"iterations", r.iterations},
          {"t_s", r.t_s},
          {"t_f_mm", r.t_f},
          {"exit", exit_reason_name(r.exit)},
          {"final_max_force_mm", r.final_max_force},
          {"infeasible", r.infeasible},
          {"n_rr", r.conflicts.label_label},
          {"n_rp", r.conflicts.label_feature},
          {"deleted", r.deleted},
          {"graph_edges", r.graph_edges},
          {"seconds", r.seconds},
          {"global_pass", r.global_pass_ran},
          {"groups", groups},
          {"contributions", counts}};
}

}  // namespace beamlabel
