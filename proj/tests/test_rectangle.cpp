#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "egr/error.hpp"
#include "egr/rectangle.hpp"

using namespace egr;

namespace {

long choose2(long n) { return n * (n - 1) / 2; }

int centered_rank(const std::vector<Point>& pts) {
  Eigen::MatrixXd m(pts.size(), pts.front().dim());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts[i].dim(); ++j) m(i, j) = pts[i][j] - pts[0][j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

}  // namespace

TEST_CASE("regular_simplex examples") {
  const auto s2 = regular_simplex(2, 1);
  REQUIRE(s2.size() == 2);
  CHECK(s2.points[0][0] == 0.0);
  CHECK(s2.points[1][0] == doctest::Approx(1.0));

  const auto s3 = regular_simplex(3, 1);
  CHECK(s3.points[2][0] == doctest::Approx(0.5));
  CHECK(s3.points[2][1] == doctest::Approx(std::sqrt(3.0) / 2));

  const auto s7 = regular_simplex(7, 2);
  CHECK(s7.dim() == 6);
  int pairs = 0;
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      CHECK(squared_distance(s7.points[i], s7.points[j]) == doctest::Approx(4.0).epsilon(1e-12));
      ++pairs;
    }
  }
  CHECK(pairs == 21);
  CHECK_THROWS_AS(regular_simplex(1, 1), Error);
}

TEST_CASE("path_config examples") {
  const auto p = path_config(2, 1.5, 1);
  REQUIRE(p.points.size() == 3);
  CHECK(p.points[1][0] == doctest::Approx(0.75));
  CHECK(p.points[1][1] == doctest::Approx(std::sqrt(0.4375)));
  CHECK(p.points[2][0] == 1.5);

  const auto eq = path_config(2, 1, 1);
  CHECK(squared_distance(eq.points[0], eq.points[2]) == doctest::Approx(1.0));
  CHECK(squared_distance(eq.points[0], eq.points[1]) == doctest::Approx(1.0));

  const auto q = path_config(3, 2.9, 1);
  REQUIRE(q.points.size() == 4);
  CHECK(squared_distance(q.points[0], q.points[3]) == doctest::Approx(2.9 * 2.9));
  // common circle through all four points
  const auto circ = [](const Point& a, const Point& b, const Point& c) {
    const double A = std::sqrt(squared_distance(b, c)), B = std::sqrt(squared_distance(a, c)),
                 C = std::sqrt(squared_distance(a, b));
    const double s = (A + B + C) / 2;
    return A * B * C / (4 * std::sqrt(s * (s - A) * (s - B) * (s - C)));
  };
  CHECK(circ(q.points[0], q.points[1], q.points[2]) ==
        doctest::Approx(circ(q.points[1], q.points[2], q.points[3])).epsilon(1e-9));

  CHECK_THROWS_AS(path_config(2, 2, 1), Error);
  CHECK_THROWS_AS(path_config(2, 2.5, 1), Error);
  CHECK_THROWS_AS(path_config(1, 0.5, 1), Error);
}

TEST_CASE("path_config round trip on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double y = 0.1 + 2 * u(rng);
    const int t = 2 + static_cast<int>(u(rng) * 6);
    const double x = y * t * (0.02 + 0.97 * u(rng));
    if (t < std::ceil(x / y)) continue;
    const auto p = path_config(t, x, y);
    for (int j = 0; j < t; ++j) {
      CHECK(squared_distance(p.points[j], p.points[j + 1]) == doctest::Approx(y * y).epsilon(1e-9));
    }
    CHECK(squared_distance(p.points.front(), p.points.back()) == doctest::Approx(x * x).epsilon(1e-12));
    CHECK(centered_rank(p.points) <= 2);
  }
}

TEST_CASE("product_config examples") {
  const auto sq = product_config(regular_simplex(2, 1), regular_simplex(2, 1)).product;
  REQUIRE(sq.size() == 4);
  CHECK(squared_distance(sq.points[0], sq.points[3]) == doctest::Approx(2.0));
  CHECK(squared_distance(sq.points[0], sq.points[1]) == doctest::Approx(1.0));

  const auto big = product_config(regular_simplex(7, 1), to_configuration(path_config(2, 1.5, 1)));
  CHECK(big.product.size() == 21);
  CHECK(big.product.dim() == 8);

  Configuration one;
  one.add(Point{3.0});
  const auto a = regular_simplex(4, 1);
  const auto id = product_config(a, one).product;
  CHECK(congruence_check(a.points, id.points).has_value());
}

TEST_CASE("aux1 configuration census") {
  const auto cfg = aux1_configuration(2, 1.5, 1);
  CHECK(cfg.size() == 21);
  CHECK(cfg.copies.at("fiber").size() == 3);
  CHECK(cfg.copies.at("endpoints").size() == 7);
  CHECK(cfg.copies.at("rectangle").size() == 42);
  CHECK_NOTHROW(validate(cfg));
  const auto rect = SimplexSpec::from_points(cfg.select(cfg.copies.at("rectangle").front()));
  CHECK(enumerate_copies(cfg, rect).size() == 42);
  const SimplexSpec pair{{{0, 2.25}, {2.25, 0}}};
  CHECK(enumerate_copies(cfg, pair).size() == 70);
}

TEST_CASE("count_distance_pairs agrees with the closed form") {
  const auto m2 = count_distance_pairs(2, 1.5, 1);
  CHECK(m2.enumerated == 70);
  CHECK(m2.formula_q == 3 * choose2(7) + 7);
  CHECK(m2.fiber == 63);
  CHECK(m2.endpoint == 7);

  const auto m3 = count_distance_pairs(3, 2.5, 1);
  CHECK(m3.formula_q == 4 * choose2(10) + 10);
  CHECK(m3.enumerated == 190);

  CHECK_THROWS_AS(count_distance_pairs(3, 1.5, 1), Error);
  CHECK_THROWS_AS(count_distance_pairs(2, 1, 1.5), Error);
}

TEST_CASE("classify_distance_pair flags foreign pairs") {
  CHECK(classify_distance_pair(0, 3, 2) == PairKind::Fiber);
  CHECK(classify_distance_pair(3, 5, 2) == PairKind::Endpoint);
  CHECK(classify_distance_pair(3, 4, 2) == PairKind::Unclassified);
  CHECK(classify_distance_pair(0, 4, 2) == PairKind::Unclassified);
}
