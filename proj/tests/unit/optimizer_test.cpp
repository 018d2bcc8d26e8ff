#include "beamlabel/baselines.hpp"
#include "beamlabel/metrics.hpp"
#include "beamlabel/optimizer.hpp"
#include "beamlabel/proximity.hpp"
#include "beamlabel/synthetic.hpp"
#include "doctest.h"

using namespace beamlabel;

TEST_CASE("iteration budget clamps to the label count") {
  CHECK(effective_t_s(3) == 20);
  CHECK(effective_t_s(47) == 47);
  CHECK(effective_t_s(500) == 100);
  CHECK(effective_t_s(47, 5) == 5);
}

TEST_CASE("fixed leaders only move along the leader") {
  LeaderSpec l;
  l.type = LeaderType::FixedDirFixedConn;
  const Vec2 p = project_for_leader_type({3, 4}, l);
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(4.0));
  l.type = LeaderType::FixedDirFreeConn;
  CHECK(project_for_leader_type({3, 4}, l) == Vec2{3, 4});
}

TEST_CASE("runs honour the termination contract") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const Scene s = generate_synthetic(40, seed);
    const RunResult r = run(s.features, s.config);
    CHECK(r.report.iterations <= r.report.t_s);
    if (r.report.iterations < r.report.t_s) {
      for (const auto& g : r.report.groups) {
        if (g.loop.exit == ExitReason::ForceThreshold) CHECK(g.loop.final_max_force <= s.config.t_f());
      }
    }
    const auto c = count_conflicts(r.labels, s.features, s.config.d_min);
    CHECK((c.total() == 0 || r.report.infeasible));
  }
}

TEST_CASE("free connection leaders stay attached") {
  const Scene s = generate_synthetic(40, 41);
  const RunResult r = run(s.features, s.config);
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const Label& l = r.labels[i];
    CHECK(l.rect.x_min - 1e-9 <= l.conn.x);
    CHECK(l.conn.x <= l.rect.x_max + 1e-9);
  }
}

TEST_CASE("metrics of an unchanged layout are zero") {
  const Scene s = generate_synthetic(30, 42);
  const auto init = initial_layout(s.features, s.config);
  const ProximityGraph g = build_dt(init);
  CHECK(a_ms(init, init, g) == 0.0);
  CHECK(d_sum(init, init) == 0.0);
  std::vector<Label> moved = init;
  for (auto& l : moved) l.rect = l.rect.translated({3, 4});
  CHECK(a_ms(init, moved, g) == doctest::Approx(0.0));
  CHECK(d_sum(init, moved) == doctest::Approx(0.5 * init.size()));
}

TEST_CASE("baselines") {
  const Scene s = generate_synthetic(50, 43);
  const BaselineResult n = nop(s.features, s.config);
  const auto init = initial_layout(s.features, s.config);
  REQUIRE(n.labels.size() == init.size());
  for (std::size_t i = 0; i < init.size(); ++i) CHECK(n.labels[i].rect == init[i].rect);
  const BaselineResult lp = localp(s.features, s.config);
  CHECK(lp.conflicts.total() <= n.conflicts.total());
  CHECK(lp.conflicts == count_conflicts(lp.labels, s.features, s.config.d_min));
}
