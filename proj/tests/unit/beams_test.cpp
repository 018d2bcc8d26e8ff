#include <Eigen/Eigenvalues>
#include <random>

#include "beamlabel/beams.hpp"
#include "doctest.h"

using namespace beamlabel;

TEST_CASE("element matrix is symmetric with a rigid-body null space") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const BeamParams p;
  for (int k = 0; k < 100; ++k) {
    const Vec2 a{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    if ((b - a).norm() < 0.5) continue;
    const ElementMatrix K = element_stiffness(a, b, p);
    CHECK((K - K.transpose()).norm() <= 1e-12 * K.norm());
    const Eigen::SelfAdjointEigenSolver<ElementMatrix> es(K);
    const auto ev = es.eigenvalues();
    CHECK(ev.minCoeff() >= -1e-9 * ev.maxCoeff());
    int zero = 0;
    for (int i = 0; i < 6; ++i) zero += std::abs(ev[i]) <= 1e-9 * ev.maxCoeff() ? 1 : 0;
    CHECK(zero == 3);
    Eigen::Matrix<double, 6, 1> tx, ty, rot;
    tx << 1, 0, 0, 1, 0, 0;
    ty << 0, 1, 0, 0, 1, 0;
    const Vec2 d = b - a;
    rot << 0, 0, 1, -d.y, d.x, 1;
    CHECK((K * tx).norm() <= 1e-9);
    CHECK((K * ty).norm() <= 1e-9);
    CHECK((K * rot).norm() <= 1e-9 * K.norm());
  }
}

TEST_CASE("element matrix rotates with the member") {
  const BeamParams p;
  const ElementMatrix k0 = element_stiffness(2.0, 0.0, p);
  const double t = 0.7;
  Eigen::Matrix<double, 6, 6> T = Eigen::Matrix<double, 6, 6>::Zero();
  for (int n = 0; n < 2; ++n) {
    T(3 * n, 3 * n) = std::cos(t);
    T(3 * n, 3 * n + 1) = std::sin(t);
    T(3 * n + 1, 3 * n) = -std::sin(t);
    T(3 * n + 1, 3 * n + 1) = std::cos(t);
    T(3 * n + 2, 3 * n + 2) = 1.0;
  }
  const ElementMatrix kt = element_stiffness(2.0, t, p);
  CHECK((kt - T.transpose() * k0 * T).norm() <= 1e-12 * k0.norm());
  CHECK_THROWS_AS(element_stiffness(Vec2{1, 1}, Vec2{1, 1}, p), ZeroLengthEdge);
}

TEST_CASE("isolated node follows the ground spring") {
  ProximityGraph g;
  g.positions = {{0, 0}};
  BeamParams p;
  p.ground_stiffness = 1.0;
  const std::vector<Vec2> f{{3, 0}};
  const DisplacementField d = solve_uncapped(g, f, p);
  CHECK(d.nodes[0].dx == doctest::Approx(3.0));
  CHECK(d.nodes[0].dy == 0.0);
  const DisplacementField c = solve_displacements(g, f, p, 0.4);
  CHECK(std::hypot(c.nodes[0].dx, c.nodes[0].dy) == doctest::Approx(0.4));
}

TEST_CASE("axial pair matches hand equilibrium") {
  ProximityGraph g;
  g.positions = {{0, 0}, {1, 0}};
  g.edges.push_back({0, 1, 1.0, 0.0});
  BeamParams p;
  p.ground_stiffness = 1.0;
  const std::vector<Vec2> f{{1, 0}, {-1, 0}};
  const DisplacementField d = solve_uncapped(g, f, p);
  CHECK(d.nodes[0].dx == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.nodes[1].dx == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("global stiffness is positive definite") {
  ProximityGraph g;
  g.positions = {{0, 0}, {3, 0}, {1, 2}};
  g.edges = {{0, 1, 3.0, 0.0}, {0, 2, std::sqrt(5.0), 63.43}, {1, 2, std::sqrt(8.0), 135.0}};
  const Eigen::MatrixXd K = assemble_stiffness(g, BeamParams{});
  const Eigen::LLT<Eigen::MatrixXd> llt(K);
  CHECK(llt.info() == Eigen::Success);
  CHECK((K - K.transpose()).norm() <= 1e-12 * K.norm());
}

TEST_CASE("stiffer ground springs move nodes less") {
  ProximityGraph g;
  g.positions = {{0, 0}, {2, 0}};
  g.edges.push_back({0, 1, 2.0, 0.0});
  const std::vector<Vec2> f{{0, 1}, {0.5, 0}};
  BeamParams soft, hard;
  soft.ground_stiffness = 0.1;
  hard.ground_stiffness = 2.0;
  const auto ds = solve_uncapped(g, f, soft);
  const auto dh = solve_uncapped(g, f, hard);
  auto energy = [&](const DisplacementField& d) {
    return f[0].x * d.nodes[0].dx + f[0].y * d.nodes[0].dy + f[1].x * d.nodes[1].dx +
           f[1].y * d.nodes[1].dy;
  };
  CHECK(energy(dh) < energy(ds));
}
