#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "beamlabel/baselines.hpp"
#include "beamlabel/metrics.hpp"
#include "beamlabel/optimizer.hpp"
#include "beamlabel/proximity.hpp"
#include "beamlabel/scene_io.hpp"
#include "beamlabel/svg.hpp"
#include "beamlabel/synthetic.hpp"

using namespace beamlabel;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

struct PlaceOptions {
  std::string scene;
  std::string method = "beams";
  std::optional<int> leader_type;
  std::optional<std::string> graph;
  std::optional<int> t_num;
  std::optional<int> iterations;
  std::string out_json;
  std::string out_svg;
  std::string metrics;
  bool overlay_graph = false;
};

struct Outcome {
  std::vector<Label> initial;
  std::vector<Label> labels;
  json report;
  bool infeasible = false;
  double seconds = 0.0;
  int steps = 0;
};

void apply_overrides(LayoutConfig& cfg, const PlaceOptions& o) {
  if (o.leader_type) cfg.leader.type = leader_type_from_int(*o.leader_type);
  if (o.graph) cfg.graph_kind = parse_graph_kind(*o.graph);
  if (o.t_num) cfg.t_num = *o.t_num;
  if (o.iterations) cfg.t_s_override = *o.iterations;
  cfg.validate();
}

Outcome place(const Scene& scene, const std::string& method) {
  Outcome out;
  if (method == "beams") {
    RunResult r = run(scene.features, scene.config);
    out.initial = std::move(r.initial);
    out.labels = std::move(r.labels);
    out.report = report_to_json(r.report);
    out.infeasible = r.report.infeasible;
    out.seconds = r.report.seconds;
    out.steps = r.report.iterations;
    for (const auto& g : r.report.groups) out.steps = std::max(out.steps, g.loop.iterations);
    return out;
  }
  BaselineResult b;
  if (method == "localp") {
    b = localp(scene.features, scene.config);
  } else if (method == "nop") {
    b = nop(scene.features, scene.config);
  } else {
    throw CLI::ValidationError("--method", "must be beams, localp or nop");
  }
  out.initial = std::move(b.initial);
  out.labels = std::move(b.labels);
  out.infeasible = b.infeasible;
  out.seconds = b.seconds;
  out.steps = static_cast<int>(b.moves);
  out.report = {{"moves", b.moves},
                {"infeasible", b.infeasible},
                {"n_rr", b.conflicts.label_label},
                {"n_rp", b.conflicts.label_feature},
                {"seconds", b.seconds}};
  return out;
}

int cmd_place(const PlaceOptions& o) {
  Scene scene = load_scene(o.scene);
  apply_overrides(scene.config, o);
  const Outcome res = place(scene, o.method);
  const MetricsReport m =
      evaluate(res.initial, res.labels, scene.features, scene.config, res.seconds);

  json doc = placement_to_json(o.method, res.labels, scene.config.screen, scene.config);
  doc["infeasible"] = res.infeasible;
  doc["report"] = res.report;
  doc["metrics"] = metrics_to_json(m);
  if (!o.out_json.empty()) write_text_file(o.out_json, doc.dump(2) + "\n");
  if (!o.out_svg.empty()) {
    SvgOptions so;
    so.d_min = scene.config.d_min;
    ProximityGraph g;
    if (o.overlay_graph) {
      g = build_graph(res.labels, scene.config.graph_kind,
                      long_edge_threshold(scene.features, scene.config));
      so.graph = &g;
    }
    write_svg(res.labels, scene.features, scene.config.screen, o.out_svg, so);
  }
  json mj = metrics_to_json(m);
  mj["infeasible"] = res.infeasible;
  mj["method"] = o.method;
  if (!o.metrics.empty()) {
    if (o.metrics == "-") {
      std::cout << mj.dump(2) << "\n";
    } else {
      write_text_file(o.metrics, mj.dump(2) + "\n");
    }
  }
  if (o.metrics != "-") {
    std::printf("method=%s n=%zu N_rr=%zu N_rp=%zu D_sum=%.3fcm A_ms=%.2fdeg t=%.3fs%s\n",
                o.method.c_str(), scene.features.size(), m.n_rr, m.n_rp, m.d_sum_cm, m.a_ms_deg,
                m.seconds, res.infeasible ? " infeasible=true" : "");
  }
  return kOk;
}

struct GenOptions {
  std::size_t n = 47;
  std::uint64_t seed = 1;
  std::string density = "uniform";
  std::string script = "ascii";
  double width = 250.0;
  double height = 150.0;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  SyntheticProfile p{parse_density(o.density), parse_script(o.script)};
  const Scene s = generate_synthetic(o.n, o.seed, Rect(0, 0, o.width, o.height), p);
  const std::string text = scene_to_json(s).dump(2) + "\n";
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
  return kOk;
}

int cmd_eval(const std::string& scene_path, const std::string& placement_path,
             const std::string& out_svg) {
  const Scene scene = load_scene(scene_path);
  const Placement p = load_placement(placement_path);
  if (p.labels.size() != scene.features.size()) {
    throw SceneError("placement has " + std::to_string(p.labels.size()) + " labels, scene has " +
                     std::to_string(scene.features.size()) + " features");
  }
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    if (p.labels[i].feature_id != scene.features[i].id) {
      throw SceneError("labels[" + std::to_string(i) + "].feature_id: expected '" +
                       scene.features[i].id + "'");
    }
  }
  const std::vector<Label> initial =
      handle_offscreen_fixed(initial_layout(scene.features, scene.config), scene.config.screen,
                             scene.config.leader);
  const MetricsReport m = evaluate(initial, p.labels, scene.features, scene.config);
  json mj = metrics_to_json(m);
  mj["method"] = p.method;
  mj["infeasible"] = m.n_rr + m.n_rp > 0;
  std::cout << mj.dump(2) << "\n";
  if (!out_svg.empty()) {
    SvgOptions so;
    so.d_min = scene.config.d_min;
    write_svg(p.labels, scene.features, scene.config.screen, out_svg, so);
  }
  return kOk;
}

struct BenchOptions {
  std::vector<std::size_t> sizes{10, 30, 60, 120, 200};
  int seeds = 3;
  std::uint64_t first_seed = 1;
  std::string method = "beams";
  std::string density = "uniform";
  std::string out_json;
};

int cmd_bench(const BenchOptions& o) {
  json rows = json::array();
  std::printf("%6s %8s %10s %10s %10s\n", "n", "steps", "t_s", "conflicts", "infeasible");
  for (std::size_t n : o.sizes) {
    double t = 0.0, steps = 0.0, conflicts = 0.0;
    int infeasible = 0;
    for (int k = 0; k < o.seeds; ++k) {
      const Scene s = generate_synthetic(n, o.first_seed + static_cast<std::uint64_t>(k),
                                         Rect(0, 0, 250, 150),
                                         {parse_density(o.density), Script::Ascii});
      const Outcome r = place(s, o.method);
      const ConflictCounts c = count_conflicts(r.labels, s.features, s.config.d_min);
      t += r.seconds;
      steps += r.steps;
      conflicts += static_cast<double>(c.total());
      infeasible += r.infeasible ? 1 : 0;
    }
    const double k = o.seeds;
    std::printf("%6zu %8.1f %10.4f %10.2f %10d\n", n, steps / k, t / k, conflicts / k, infeasible);
    rows.push_back({{"n", n},
                    {"mean_steps", steps / k},
                    {"mean_seconds", t / k},
                    {"mean_conflicts", conflicts / k},
                    {"infeasible_runs", infeasible}});
  }
  if (!o.out_json.empty()) write_text_file(o.out_json, rows.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beamlabel: leadered point-label placement with a beam displacement network"};
  app.require_subcommand(1);

  PlaceOptions po;
  auto* place_cmd = app.add_subcommand("place", "Place labels for a scene");
  place_cmd->add_option("scene", po.scene, "Scene JSON file")->required();
  place_cmd->add_option("--method", po.method, "beams, localp or nop")
      ->check(CLI::IsMember({"beams", "localp", "nop"}));
  place_cmd->add_option("--leader-type", po.leader_type, "Leader type 1..4")
      ->check(CLI::Range(1, 4));
  place_cmd->add_option("--graph", po.graph, "Proximity graph: dt or mst")
      ->check(CLI::IsMember({"dt", "mst"}));
  place_cmd->add_option("--tnum", po.t_num, "Maximum subgroup size")->check(CLI::PositiveNumber);
  place_cmd->add_option("--seed-iterations", po.iterations, "Iteration budget T_s")
      ->check(CLI::PositiveNumber);
  place_cmd->add_option("--out-json", po.out_json, "Write the placement JSON here");
  place_cmd->add_option("--out-svg", po.out_svg, "Write an SVG rendering here");
  place_cmd->add_option("--metrics", po.metrics, "Write metrics JSON here ('-' for stdout)");
  place_cmd->add_flag("--overlay-graph", po.overlay_graph, "Draw the proximity graph in the SVG");

  GenOptions go;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic scene");
  gen_cmd->add_option("-n,--count", go.n, "Number of features")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", go.seed, "Random seed");
  gen_cmd->add_option("--density", go.density, "uniform or clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  gen_cmd->add_option("--script", go.script, "ascii or cjk")->check(CLI::IsMember({"ascii", "cjk"}));
  gen_cmd->add_option("--width", go.width, "Screen width, mm")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--height", go.height, "Screen height, mm")->check(CLI::PositiveNumber);
  gen_cmd->add_option("-o,--out", go.out, "Output file (default stdout)");

  std::string eval_scene, eval_placement, eval_svg;
  auto* eval_cmd = app.add_subcommand("eval", "Compute metrics for a placement");
  eval_cmd->add_option("scene", eval_scene, "Scene JSON file")->required();
  eval_cmd->add_option("placement", eval_placement, "Placement JSON file")->required();
  eval_cmd->add_option("--out-svg", eval_svg, "Write an SVG rendering here");

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep scene sizes and report steps, time, conflicts");
  bench_cmd->add_option("--sizes", bo.sizes, "Scene sizes")->delimiter(',');
  bench_cmd->add_option("--seeds", bo.seeds, "Scenes per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--first-seed", bo.first_seed, "Seed of the first scene");
  bench_cmd->add_option("--method", bo.method, "beams, localp or nop")
      ->check(CLI::IsMember({"beams", "localp", "nop"}));
  bench_cmd->add_option("--density", bo.density, "uniform or clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  bench_cmd->add_option("--out-json", bo.out_json, "Write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (place_cmd->parsed()) return cmd_place(po);
    if (gen_cmd->parsed()) return cmd_gen(go);
    if (eval_cmd->parsed()) return cmd_eval(eval_scene, eval_placement, eval_svg);
    if (bench_cmd->parsed()) return cmd_bench(bo);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
