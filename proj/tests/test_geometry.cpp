#include <doctest.h>

#include <cmath>
#include <random>

#include "egr/error.hpp"
#include "egr/geometry.hpp"

using namespace egr;

namespace {

SimplexSpec triangle_spec(double a, double b, double c) {
  return SimplexSpec{{{0, c * c, b * b}, {c * c, 0, a * a}, {b * b, a * a, 0}}};
}

// Heron in the 16*Area^2 form, kept separate from the determinant route.
double heron_area(double a, double b, double c) {
  const double s = 2 * a * a * b * b + 2 * b * b * c * c + 2 * c * c * a * a - a * a * a * a -
                   b * b * b * b - c * c * c * c;
  return std::sqrt(s) / 4.0;
}

}  // namespace

TEST_CASE("squared_distance examples") {
  CHECK(squared_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(squared_distance({0, 0}, {3, 4}) == 25.0);
  CHECK(squared_distance({1, 1, 1}, {2, 3, 5}) == 21.0);
  CHECK_THROWS_AS(squared_distance({0, 0}, {1, 2, 3}), Error);
}

TEST_CASE("tolerance config bounds") {
  CHECK_NOTHROW(ToleranceConfig{}.validate());
  CHECK_THROWS_AS((ToleranceConfig{0.0, 1e-12}.validate()), Error);
  CHECK_THROWS_AS((ToleranceConfig{1e-9, 1e-2}.validate()), Error);
  ToleranceConfig t;
  CHECK(t.equal(1.0, 1.0 + 5e-10));
  CHECK_FALSE(t.equal(1.0, 1.0 + 1e-8));
}

TEST_CASE("congruence_check examples") {
  std::vector<Point> tri = {{0, 0}, {2, 0}, {0.5, 1.5}};
  std::vector<Point> rot;
  for (const auto& p : tri) rot.push_back({-p[1], p[0]});
  auto perm = congruence_check(tri, rot);
  REQUIRE(perm);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(squared_distance(tri[i], tri[j]) ==
            doctest::Approx(squared_distance(rot[(*perm)[i]], rot[(*perm)[j]])));
    }
  }

  std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<Point> rect = {{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  CHECK_FALSE(congruence_check(square, rect));

  auto tet = embed_from_distances(SimplexSpec::regular(4, 1.0));
  std::vector<Point> refl = tet;
  for (auto& p : refl) p[2] = -p[2];
  CHECK(congruence_check(tet, refl));
  CHECK(congruence_check(refl, tet));
}

TEST_CASE("congruence_check errors") {
  std::vector<Point> a(3, Point{0.0}), b(4, Point{0.0});
  CHECK_THROWS_AS(congruence_check(a, b), Error);
  std::vector<Point> big(13), big2(13);
  for (int i = 0; i < 13; ++i) {
    big[i] = Point{double(i)};
    big2[i] = Point{double(i)};
  }
  CHECK_THROWS_AS(congruence_check(big, big2), Error);
}

TEST_CASE("congruence_check is symmetric on random pairs") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> a(5, Point(3)), b(5, Point(3));
    for (auto& p : a)
      for (int i = 0; i < 3; ++i) p[i] = u(rng);
    // b is a shuffled translate of a half the time, random otherwise
    const bool copy = trial % 2 == 0;
    for (int i = 0; i < 5; ++i) {
      for (int c = 0; c < 3; ++c) b[i][c] = copy ? a[(i + 2) % 5][c] + 0.3 : u(rng);
    }
    const bool ab = congruence_check(a, b).has_value();
    const bool ba = congruence_check(b, a).has_value();
    CHECK(ab == ba);
    CHECK(ab == copy);
  }
}

TEST_CASE("enumerate_copies examples") {
  Configuration tri;
  tri.add({0, 0});
  tri.add({1, 0});
  tri.add({0.5, std::sqrt(3.0) / 2});
  CHECK(enumerate_copies(tri, SimplexSpec{{{0, 1}, {1, 0}}}).size() == 3);

  Configuration sq;
  for (auto p : std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}) sq.add(p);
  CHECK(enumerate_copies(sq, SimplexSpec::regular(3, 1.0)).empty());
  const auto sides = enumerate_copies(sq, SimplexSpec{{{0, 1}, {1, 0}}});
  CHECK(sides == CopyList{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("enumerate_copies finds planted copies") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Configuration cfg;
    for (int i = 0; i < 40; ++i) cfg.add({u(rng), u(rng), u(rng)});
    std::vector<Point> planted = {{0.1, 0.2, 0.3}, {1.1, 0.2, 0.3}, {0.1, 1.4, 0.3}, {0.4, 0.5, 1.9}};
    const SimplexSpec spec = SimplexSpec::from_points(planted);
    IndexTuple want;
    for (const auto& p : planted) want.push_back(cfg.add(p));
    const auto copies = enumerate_copies(cfg, spec);
    CHECK(std::find(copies.begin(), copies.end(), want) != copies.end());
    for (const auto& t : copies) CHECK(congruence_check(cfg.select(t), planted));
  }
}

TEST_CASE("enumerate_copies caps") {
  Configuration cfg;
  for (int i = 0; i < 201; ++i) cfg.add({double(i)});
  CHECK_THROWS_AS(enumerate_copies(cfg, SimplexSpec{{{0, 1}, {1, 0}}}), Error);
  CHECK_THROWS_AS(enumerate_copies(Configuration{}, SimplexSpec::regular(7, 1.0)), Error);
}

TEST_CASE("cayley_menger_volume examples") {
  CHECK(cayley_menger_volume(triangle_spec(1, 1, 1)) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
  CHECK(cayley_menger_volume(triangle_spec(1, 1, 2)) == 0.0);
  CHECK(cayley_menger_volume(SimplexSpec::regular(4, 1.0)) ==
        doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-12));
  CHECK(cayley_menger_volume(SimplexSpec{{{0, 4}, {4, 0}}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(cayley_menger_volume(triangle_spec(1, 1, 3)), Error);
}

TEST_CASE("cayley_menger_volume agrees with Heron on random triangles") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  int checked = 0;
  while (checked < 1000) {
    double s[3] = {u(rng), u(rng), u(rng)};
    std::sort(s, s + 3);
    if (s[0] + s[1] <= s[2] * (1 + 1e-3)) continue;
    const double cm = cayley_menger_volume(triangle_spec(s[0], s[1], s[2]));
    const double he = heron_area(s[0], s[1], s[2]);
    CHECK(std::fabs(cm - he) <= 1e-12 * he * 10);
    ++checked;
  }
}

TEST_CASE("embed_from_distances examples") {
  auto seg = embed_from_distances(SimplexSpec{{{0, 4}, {4, 0}}});
  REQUIRE(seg.size() == 2);
  CHECK(seg[0].dim() == 1);
  CHECK(seg[0][0] == 0.0);
  CHECK(seg[1][0] == doctest::Approx(2.0));

  auto tri = embed_from_distances(triangle_spec(2, 2, 3));
  // first edge has length c = 3; the third point sits at height 2*Area/3
  CHECK(tri[1][0] == doctest::Approx(3.0));
  CHECK(tri[1][1] == 0.0);
  CHECK(tri[2][1] == doctest::Approx(std::sqrt(63.0) / 6).epsilon(1e-12));
  CHECK(ordered_congruent(tri, triangle_spec(2, 2, 3)));

  auto tet = embed_from_distances(SimplexSpec::regular(4, 1.0));
  CHECK(tet[3][2] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  // triangular pattern: point i has no component beyond axis i-1
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t c = i; c < 3; ++c) CHECK(tet[i][c] == 0.0);
  }
}

TEST_CASE("embed_from_distances round trip on random simplices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 5;
    std::vector<Point> pts(k, Point(k + 1));
    for (auto& p : pts)
      for (int i = 0; i < k + 1; ++i) p[i] = u(rng);
    const SimplexSpec spec = SimplexSpec::from_points(pts);
    const auto emb = embed_from_distances(spec);
    CHECK(static_cast<int>(emb[0].dim()) == k - 1);
    CHECK(ordered_congruent(emb, spec));
  }
}

TEST_CASE("embed_from_distances handles flat specs and rejects impossible ones") {
  // unit square: four coplanar points
  SimplexSpec sq{{{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}};
  auto pts = embed_from_distances(sq);
  CHECK(ordered_congruent(pts, sq));
  CHECK(cayley_menger_volume(sq) == 0.0);
  CHECK_THROWS_AS(embed_from_distances(triangle_spec(1, 1, 3)), Error);
  SimplexSpec asym{{{0, 1}, {2, 0}}};
  CHECK_THROWS_AS(validate(asym), Error);
}

TEST_CASE("configuration validation") {
  Configuration cfg;
  cfg.add({0, 0});
  cfg.add({1, 0});
  CHECK_NOTHROW(validate(cfg));
  cfg.copies["edge"] = {{0, 1}};
  CHECK_NOTHROW(validate(cfg));
  cfg.copies["bad"] = {{0, 2}};
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.copies.erase("bad");
  cfg.add({0, 0});
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg.allow_coincident = true;
  CHECK_NOTHROW(validate(cfg));
  CHECK_THROWS_AS(cfg.add({0, 0, 0}), Error);
}
