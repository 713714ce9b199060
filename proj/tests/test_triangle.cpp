#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "egr/error.hpp"
#include "egr/triangle.hpp"

using namespace egr;

namespace {

constexpr double kPi = std::numbers::pi;

// Random obtuse triangle with a <= b <= c, built from two sides and an angle.
struct Sides {
  double a, b, c;
};

Sides random_obtuse(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.2, 5.0);
  std::uniform_real_distribution<double> ang(kPi / 2 + 0.01, kPi - 0.01);
  for (;;) {
    double p = len(rng), q = len(rng);
    const double g = ang(rng);
    double r = std::sqrt(p * p + q * q - 2 * p * q * std::cos(g));
    double s[3] = {p, q, r};
    std::sort(s, s + 3);
    if (s[0] + s[1] > s[2] * (1 + 1e-6)) return {s[0], s[1], s[2]};
  }
}

Point random_on_sphere(std::mt19937_64& rng, const Point& center, double s) {
  std::normal_distribution<double> n(0, 1);
  Point p(center.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) p[i] = n(rng);
  return center + p * (s / norm(p));
}

}  // namespace

TEST_CASE("triangle_invariants examples") {
  const auto eq = triangle_invariants(1, 1, 1);
  CHECK(eq.delta == doctest::Approx(3.0));
  CHECK(eq.h == doctest::Approx(std::sqrt(3.0)));
  CHECK_FALSE(eq.obtuse);

  const auto t = triangle_invariants(2, 2, 3);
  CHECK(t.delta == 63.0);
  CHECK(t.h == doctest::Approx(std::sqrt(63.0) / 2).epsilon(1e-14));
  CHECK(t.h == doctest::Approx(3.9686).epsilon(1e-4));
  CHECK(t.obtuse);
  CHECK(t.circumradius == doctest::Approx(1.5119).epsilon(1e-4));
  // coordinate cross-check: circumradius = abc / (4 Area) with Area from base/height
  const double area = 0.5 * 3.0 * std::sqrt(4.0 - 2.25);
  CHECK(t.circumradius == doctest::Approx(2.0 * 2.0 * 3.0 / (4 * area)).epsilon(1e-12));

  CHECK_THROWS_AS(triangle_invariants(1, 1, 2), Error);
  CHECK_THROWS_AS(triangle_invariants(1, 1, 3), Error);
  CHECK_THROWS_AS(triangle_invariants(2, 1, 1.5), Error);
}

TEST_CASE("perturbed_chord examples") {
  const auto r = perturbed_chord(2, 2, 3, 1);
  CHECK(r.ell == doctest::Approx(3.96653).epsilon(1e-5));
  CHECK(r.bound == doctest::Approx(5.91608).epsilon(1e-5));
  CHECK(r.ok);

  const double h = std::sqrt(63.0) / 2;
  const auto near = perturbed_chord(2, 2, 3, h * (1 - 1e-12));
  CHECK(near.ell < 1e-4);
  CHECK(near.ok);

  CHECK_THROWS_AS(perturbed_chord(2, 2, 3, 5), Error);
  CHECK_THROWS_AS(perturbed_chord(1, 1, 1, 0.5), Error);
}

TEST_CASE("key inequalities on random obtuse triangles") {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_obtuse(rng);
    const auto t = triangle_invariants(s.a, s.b, s.c);
    CHECK(t.h < 2 * s.b);
    std::uniform_real_distribution<double> e(0.0, 1.0);
    const double eps = t.h * (0.001 + 0.998 * e(rng));
    CHECK(perturbed_chord(s.a, s.b, s.c, eps).ok);
  }
}

TEST_CASE("build_five_point example constants") {
  const auto g = build_five_point(2, 2, 3, 1);
  CHECK(g.c_prime == doctest::Approx(2.9580).epsilon(1e-4));
  CHECK(g.b_prime == doctest::Approx(1.9365).epsilon(1e-4));
  CHECK(g.x == doctest::Approx(2.1947).epsilon(1e-4));
  CHECK((g.b_prime - g.x) * (g.b_prime - g.x) + (g.ell / 2) * (g.ell / 2) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(five_point_residual(g, 2, 2, 3) < 1e-12);
  // K is the midpoint of AB; N lies on KK' at distance b' from K
  const Point k = (g.A + g.B) * 0.5;
  CHECK(norm(k) == 0.0);
  CHECK(norm(g.N - k) == doctest::Approx(g.b_prime));
  CHECK(g.N[1] == 0.0);
  CHECK(g.N[2] == 0.0);
}

TEST_CASE("build_five_point near the boundary and on random inputs") {
  const auto g = build_five_point(2, 2, 3, 3.96);
  CHECK(five_point_residual(g, 2, 2, 3) < 1e-9);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> e(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_obtuse(rng);
    const double eps = triangle_invariants(s.a, s.b, s.c).h * e(rng);
    const auto gg = build_five_point(s.a, s.b, s.c, eps);
    CHECK(five_point_residual(gg, s.a, s.b, s.c) <= 1e-9);
  }
}

TEST_CASE("five-point configuration carries the four congruent triangles") {
  const auto g = build_five_point(2, 2, 3, 1);
  Configuration cfg = to_configuration(g);
  CHECK_NOTHROW(validate(cfg));
  const SimplexSpec t{{{0, 9, 4}, {9, 0, 4}, {4, 4, 0}}};
  const auto found = enumerate_copies(cfg, t);
  CopyList want;
  for (auto tri : cfg.copies.at("triangle")) {
    std::sort(tri.begin(), tri.end());
    want.push_back(tri);
  }
  std::sort(want.begin(), want.end());
  CHECK(found == want);
}

TEST_CASE("chain_f matches the worked value") {
  CHECK(std::fabs(chain_f(1, 1.0, std::sqrt(3.0), 1.0)) < 1e-14);
}

TEST_CASE("chain_on_sphere unit sphere example") {
  const Point o{0, 0, 0};
  const Point u{1, 0, 0};
  const Point v{-0.5, std::sqrt(3.0) / 2, 0};
  const auto ch = chain_on_sphere(o, 1.0, u, v, 1.0);
  CHECK(ch.k == 1);
  CHECK(ch.s_prime == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(ch.nodes.size() == 3);
  CHECK(squared_distance(ch.nodes[0], ch.nodes[1]) == doctest::Approx(1.0));
  CHECK(squared_distance(ch.nodes[1], ch.nodes[2]) == doctest::Approx(1.0));
}

TEST_CASE("chain_on_sphere antipodal inserts a pre-hop") {
  const Point o{0, 0, 0};
  const auto ch = chain_on_sphere(o, 1.0, Point{0, 0, 1}, Point{0, 0, -1}, 1.0);
  CHECK(ch.prehop);
  for (std::size_t i = 0; i + 1 < ch.nodes.size(); ++i) {
    CHECK(squared_distance(ch.nodes[i], ch.nodes[i + 1]) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(squared_distance(ch.nodes[1], Point{0, 0, -1}) < 4.0);
}

TEST_CASE("chain_on_sphere random instances") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> step(0.05, 3.95);
  const Point o{0.5, -1, 2, 0.25};
  for (int i = 0; i < 100; ++i) {
    const Point u = random_on_sphere(rng, o, 2.0);
    const Point v = random_on_sphere(rng, o, 2.0);
    const double d = step(rng);
    const auto ch = chain_on_sphere(o, 2.0, u, v, d);
    for (std::size_t j = 0; j < ch.nodes.size(); ++j) {
      CHECK(squared_distance(ch.nodes[j], o) == doctest::Approx(4.0).epsilon(1e-10));
      if (j + 1 < ch.nodes.size()) {
        CHECK(squared_distance(ch.nodes[j], ch.nodes[j + 1]) == doctest::Approx(d * d).epsilon(1e-9));
      }
    }
    CHECK(std::fabs(ch.f_residual) < 1e-10);
  }
}

TEST_CASE("chain_on_sphere errors") {
  const Point o{0, 0, 0};
  CHECK_THROWS_AS(chain_on_sphere(o, 1.0, Point{1, 0, 0}, Point{0, 1, 0}, 2.0), Error);
  CHECK_THROWS_AS(chain_on_sphere(o, 1.0, Point{2, 0, 0}, Point{0, 1, 0}, 1.0), Error);
  CHECK_THROWS_AS(chain_on_sphere(Point{0, 0}, 1.0, Point{1, 0}, Point{0, 1}, 1.0), Error);
}

TEST_CASE("mono_sphere_witness examples") {
  const auto anchors = sphere_anchors(3, 1);
  CHECK(anchors.radius == doctest::Approx(std::sqrt(8.75)));
  const double r = anchors.radius;
  const auto ch = mono_sphere_witness(2, 2, 3, 1, Point{r, 0, 0, 0}, Point{-r, 0, 0, 0});
  CHECK(ch.prehop);
  CHECK(ch.nodes.size() >= 3);

  const auto same = mono_sphere_witness(2, 2, 3, 1, Point{r, 0, 0, 0}, Point{r, 0, 0, 0});
  CHECK(same.nodes.size() == 1);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 20; ++i) {
    Point u{n(rng), n(rng), n(rng), 0}, v{n(rng), n(rng), n(rng), 0};
    u *= r / norm(u);
    v *= r / norm(v);
    const auto c = mono_sphere_witness(2, 2, 3, 1, u, v);
    for (std::size_t j = 0; j + 1 < c.nodes.size(); ++j) {
      const double hop = std::sqrt(squared_distance(c.nodes[j], c.nodes[j + 1]));
      CHECK(hop == doctest::Approx(3.96653).epsilon(1e-5));
      CHECK(hop < 2 * r);
    }
  }
  CHECK_THROWS_AS(mono_sphere_witness(2, 2, 3, 1, Point{1, 0, 0, 0}, Point{r, 0, 0, 0}), Error);
}

TEST_CASE("case_b_certificate example") {
  const double c = 1.95, eps = 0.4;
  const double rad_s = std::sqrt(c * c - eps * eps / 4);
  const auto cert = case_b_certificate(1, 1, c, eps, rad_s, 1e-3);
  CHECK(cert.branch == 1);
  CHECK(cert.rad_S == doctest::Approx(1.9397).epsilon(1e-4));
  for (const Point* z : {&cert.Z1, &cert.Z2}) {
    CHECK(std::fabs(std::sqrt(squared_distance(*z, cert.P)) - c) < 1e-9);
    CHECK(std::fabs(std::sqrt(squared_distance(*z, cert.Q)) - c) < 1e-9);
  }
  CHECK(dot(cert.Q - cert.O, cert.P - cert.Q) == doctest::Approx(0.0));
  CHECK(cert.pq <= std::sqrt(2 * cert.rho * cert.delta));
  CHECK(cert.rad_W > std::sqrt(3 * c * c / 4 - eps * eps / 4));
  CHECK_NOTHROW(validate(to_configuration(cert)));
}

TEST_CASE("case_b_certificate branch two") {
  const double c = 1.95, eps = 0.4;
  const double rad_s = std::sqrt(c * c - eps * eps / 4);
  const double rho = rad_s - 0.01;
  const auto cert = case_b_certificate(1, 1, c, eps, rho, 1e-3);
  CHECK(cert.branch == 2);
  CHECK(cert.pq == doctest::Approx(std::sqrt(2 * rho * 1e-3)));
  CHECK(std::sqrt(squared_distance(cert.Z2, cert.Q)) == doctest::Approx(c).epsilon(1e-10));
}

TEST_CASE("case_b_certificate errors name the violated inequality") {
  const double c = 1.95, eps = 0.4;
  const double rad_s = std::sqrt(c * c - eps * eps / 4);
  try {
    case_b_certificate(1, 1, c, eps, rad_s, c * c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("delta1") != std::string::npos);
  }
  CHECK_THROWS_AS(case_b_certificate(1, 1, c, c / 2, rad_s, 1e-3), Error);
  CHECK_THROWS_AS(case_b_certificate(2, 2, 3, 0.5, 2.9, 1e-3), Error);  // angle below 5π/6
}
