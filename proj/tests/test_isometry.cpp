#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "amalgam/isometry.hpp"

using namespace amalgam;

namespace {

std::mt19937 rng(20240815);

Iso random_iso() {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Iso g{u(rng), u(rng), u(rng), u(rng)};
  while (g.det() <= 0.05) g = Iso{u(rng), u(rng), u(rng), u(rng)};
  double s = 1.0 / std::sqrt(g.det());
  g.a *= s; g.b *= s; g.c *= s; g.d *= s;
  return g;
}

}  // namespace

TEST_CASE("translation moves i along the imaginary axis") {
  Iso t = translation(1.0);
  Complex z = t.act(Complex(0, 1));
  CHECK(std::abs(z - Complex(0, std::exp(1.0))) < 1e-12);
  CHECK(translation_length(t) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace formula inverts the length formula") {
  // trace 2 cosh(t/2) -> length t, exactly at t = 1
  double t = 1.0;
  Iso g{std::exp(t / 2), 0, 0, std::exp(-t / 2)};
  CHECK(translation_length(g) == Catch::Approx(1.0).epsilon(1e-14));

  Iso para{1, 1, 0, 1};  // trace 2
  CHECK_THROWS_AS(translation_length(para), NonHyperbolicError);

  // trace 3 -> 2 arccosh(1.5)
  Iso g3{3.0 / 2 + std::sqrt(9.0 / 4 - 1), 0, 0,
         3.0 / 2 - std::sqrt(9.0 / 4 - 1)};
  CHECK(translation_length(g3) ==
        Catch::Approx(2 * std::acosh(1.5)).epsilon(1e-12));
}

TEST_CASE("length is a conjugacy invariant") {
  for (int it = 0; it < 50; ++it) {
    Iso h = translation(0.3 + 0.1 * it) ;
    Iso g = random_iso();
    Iso conj = g * h * g.inverse();
    CHECK(std::fabs(translation_length(conj) - translation_length(h)) < 1e-9);
  }
}

TEST_CASE("iterate lengths scale linearly") {
  Iso h = rotation(0.7) * translation(0.9) * rotation(-0.7);
  Iso p = Iso::identity();
  for (int k = 1; k <= 5; ++k) {
    p = p * h;
    CHECK(std::fabs(translation_length(p) - k * 0.9) < 1e-8);
  }
}

TEST_CASE("orientation-reversing composition closes") {
  Iso mir = mirror();
  CHECK(mir.det() < 0);
  Iso sq = mir * mir;
  CHECK(identity_residual(sq) < 1e-12);
  // mirror then translate is a glide along the imaginary axis
  Iso glide = translation(0.8) * mir;
  CHECK(glide.det() < 0);
  Iso glide2 = glide * glide;
  CHECK(translation_length(glide2) == Catch::Approx(1.6).epsilon(1e-10));
  // check the action on a sample point
  Complex z(0.3, 2.0);
  Complex w = mir.act(z);
  CHECK(std::abs(w - Complex(-0.3, 2.0)) < 1e-14);
}

TEST_CASE("frames hit their defining points") {
  std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 4);
  for (int it = 0; it < 200; ++it) {
    Complex p(ux(rng), uy(rng)), q(ux(rng), uy(rng));
    if (std::abs(p - q) < 1e-3) continue;
    Iso f = frame_to(p, q);
    CHECK(std::abs(f.act(Complex(0, 1)) - p) < 1e-9);
    double d = dist(p, q);
    CHECK(std::abs(f.act(Complex(0, std::exp(d))) - q) < 1e-8);
  }
}

TEST_CASE("geodesic intersection and inversive product") {
  // imaginary axis vs unit semicircle: perpendicular at i
  Geodesic gy = geodesic_through(Complex(0, 0.5), Complex(0, 2));
  Geodesic gu{1, 0, -1};
  CHECK(std::fabs(inversive_product(gy, gu)) < 1e-12);
  auto pt = intersect(gy, gu);
  REQUIRE(pt.has_value());
  CHECK(std::abs(*pt - Complex(0, 1)) < 1e-12);

  // ultraparallel geodesics: |product| = cosh(distance). For semicircles of
  // radius 1 centered at -2 and 2 the common perpendicular has feet at
  // (-3/2, sqrt(3)/2) and (3/2, sqrt(3)/2), giving cosh(distance) = 7.
  Geodesic g1 = Geodesic::through_boundary(BPoint{-3, 1}, BPoint{-1, 1});
  Geodesic g2 = Geodesic::through_boundary(BPoint{1, 1}, BPoint{3, 1});
  double ip = std::fabs(inversive_product(g1, g2));
  CHECK(ip == Catch::Approx(7.0).epsilon(1e-12));
  CHECK(!intersect(g1, g2).has_value());
  Complex f1(-1.5, std::sqrt(3) / 2), f2(1.5, std::sqrt(3) / 2);
  CHECK(std::cosh(dist(f1, f2)) == Catch::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("axis endpoints are fixed and ordered by attraction") {
  for (int it = 0; it < 30; ++it) {
    Iso h = random_iso();
    Iso g = h * translation(1.3) * h.inverse();
    auto [rep, att] = axis_endpoints(g);
    BPoint rep2 = act_boundary(g, rep);
    BPoint att2 = act_boundary(g, att);
    CHECK(std::fabs(boundary_angle(rep2) - boundary_angle(rep)) < 1e-8);
    CHECK(std::fabs(boundary_angle(att2) - boundary_angle(att)) < 1e-8);
    // iterating g drags interior points toward the attracting endpoint
    Complex z(0.37, 1.0);
    for (int k = 0; k < 40; ++k) z = g.act(z);
    double za = 2 * std::atan(z.real());
    double target = boundary_angle(att);
    double away = boundary_angle(rep);
    CHECK(std::fabs(za - target) < std::fabs(za - away));
  }
}

TEST_CASE("boundary angle is monotone on the circle") {
  double prev = boundary_angle(BPoint{-100, 1});
  for (double x : {-10.0, -1.0, 0.0, 1.0, 10.0, 100.0}) {
    double a = boundary_angle(BPoint{x, 1});
    CHECK(a > prev);
    prev = a;
  }
  CHECK(boundary_angle(BPoint{1, 0}) == Catch::Approx(M_PI));
}
