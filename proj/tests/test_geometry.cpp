#include <catch2/catch_amalgamated.hpp>

#include "amalgam/block_geometry.hpp"

using namespace amalgam;

TEST_CASE("b = c gives m = h by symmetry") {
  BlockGeometry g = solve_block(0.8, 0.8);
  CHECK(g.m == Catch::Approx(g.h).epsilon(1e-14));
}

TEST_CASE("parameters out of range are rejected") {
  CHECK_THROWS_AS(solve_block(0.5, 0.75), ParameterError);
  CHECK_THROWS_AS(solve_block(1.2, 0.5), ParameterError);
  CHECK_THROWS_AS(solve_block(0.5, -0.1), ParameterError);
}

TEST_CASE("default block closes and matches the shooting oracle") {
  BlockGeometry g = solve_block(0.75, 0.5);
  BlockDiagnostics d = block_diagnostics(g);
  CHECK(d.closure_residual < 1e-10);
  CHECK(d.max_angle_residual < 1e-9);
  CHECK(d.area_residual < 1e-9);
  CHECK(d.max_side_length_residual < 1e-9);

  double a_oracle = pentagon_shoot_a(0.75, 0.5);
  CHECK(std::fabs(g.a - a_oracle) < 1e-9);
}

TEST_CASE("grid of metric parameters stays within residuals") {
  for (double b = 0.3; b <= 0.91; b += 0.15) {
    for (double c = 0.2; c <= b - 0.05 + 1e-12; c += 0.15) {
      BlockGeometry g = solve_block(b, c);
      BlockDiagnostics d = block_diagnostics(g);
      INFO("b=" << b << " c=" << c);
      CHECK(d.closure_residual < 1e-9);
      CHECK(d.max_angle_residual < 1e-9);
      CHECK(std::fabs(g.a - pentagon_shoot_a(b, c)) < 1e-9);
    }
  }
}

TEST_CASE("half cells partition the octagon") {
  BlockGeometry g = solve_block(0.75, 0.5);
  // M side midpoint is the center i
  Complex mid = g.point_on_side(Half::Left, Side::M, g.m / 2);
  CHECK(std::abs(mid - Complex(0, 1)) < 1e-9);
  // the half-b sides measure b/2
  CHECK(g.side(Half::Left, Side::BTL).len == Catch::Approx(g.b / 2).margin(1e-9));
  CHECK(g.side(Half::Right, Side::BBR).len == Catch::Approx(g.b / 2).margin(1e-9));
  // hexagon angle sum: right-angled hexagon has area pi
  double sum = 0;
  for (int k = 0; k < 6; ++k) {
    Side s1 = left_cycle()[k], s2 = left_cycle()[(k + 1) % 6];
    sum += crossing_angle(g.side(Half::Left, s1).geo, g.side(Half::Left, s2).geo);
  }
  CHECK(std::fabs(4 * M_PI - sum - M_PI) < 1e-9);
}

TEST_CASE("side frames parameterize sides consistently") {
  BlockGeometry g = solve_block(0.75, 0.5);
  for (auto& [key, sg] : g.sides) {
    Complex at0 = g.point_on_side(key.first, key.second, 0.0);
    Complex atL = g.point_on_side(key.first, key.second, sg.len);
    CHECK(std::abs(at0 - sg.p) < 1e-9);
    CHECK(std::abs(atL - sg.q) < 1e-9);
  }
}
