#include "egr/rectangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "egr/error.hpp"

namespace egr {

Configuration regular_simplex(int n, double x) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "regular simplex needs at least two points");
  if (!(x > 0) || !std::isfinite(x)) fail(ErrorKind::InvalidArgument, "side length must be positive");
  Configuration cfg;
  for (const Point& p : embed_from_distances(SimplexSpec::regular(n, x))) cfg.add(p);
  return cfg;
}

PathConfig path_config(int t, double x, double y) {
  if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y)) {
    fail(ErrorKind::InvalidArgument, "path lengths must be positive");
  }
  const double floor_t = std::max(2.0, std::ceil(x / y));
  if (t < floor_t) {
    fail(ErrorKind::Precondition, "t = " + std::to_string(t) + " is below max{2, ceil(x/y)}");
  }
  if (x >= t * y) fail(ErrorKind::Precondition, "infeasible path: x >= t*y");

  // g(α) = y sin(tα)/sin α decreases from t·y to 0 on (0, π/t)
  const auto g = [&](double a) { return y * std::sin(t * a) / std::sin(a); };
  double lo = 0, hi = std::numbers::pi / t;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0) break;
    (g(mid) > x ? lo : hi) = mid;
  }
  const double alpha = 0.5 * (lo + hi);
  const double r = y / (2 * std::sin(alpha));
  const double cx = x / 2, cy = -r * std::cos(t * alpha);

  PathConfig path{t, x, y, {}};
  for (int i = 0; i <= t; ++i) {
    const double th = std::numbers::pi / 2 + t * alpha - 2 * i * alpha;
    path.points.push_back(Point{cx + r * std::cos(th), cy + r * std::sin(th)});
  }
  path.points.front() = Point{0, 0};
  path.points.back() = Point{x, 0};

  const ToleranceConfig tol;
  for (int i = 0; i < t; ++i) {
    if (!tol.equal(squared_distance(path.points[i], path.points[i + 1]), y * y)) {
      fail(ErrorKind::InvariantFailure, "path edge " + std::to_string(i) + " is not of length y");
    }
  }
  return path;
}

Configuration to_configuration(const PathConfig& path) {
  Configuration cfg;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    cfg.add(path.points[i], "v" + std::to_string(i));
  }
  auto& edges = cfg.copies["edge"];
  for (int i = 0; i < path.t; ++i) edges.push_back({i, i + 1});
  cfg.copies["endpoints"] = {{0, path.t}};
  return cfg;
}

ProductConfig product_config(const Configuration& left, const Configuration& right,
                             const ToleranceConfig& tol) {
  ProductConfig out{left, right, {}};
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      std::vector<double> c(left.points[i].coords());
      c.insert(c.end(), right.points[j].coords().begin(), right.points[j].coords().end());
      std::string label;
      if (!left.labels.empty() || !right.labels.empty()) {
        label = (left.labels.empty() ? std::to_string(i) : left.labels[i]) + "x" +
                (right.labels.empty() ? std::to_string(j) : right.labels[j]);
      }
      out.product.add(Point(std::move(c)), label);
    }
  }
  const std::size_t nb = right.size();
  const auto& pts = out.product.points;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = p + 1; q < pts.size(); ++q) {
      const double law = squared_distance(left.points[p / nb], left.points[q / nb]) +
                         squared_distance(right.points[p % nb], right.points[q % nb]);
      if (!tol.equal(squared_distance(pts[p], pts[q]), law)) {
        fail(ErrorKind::InvariantFailure, "product distance law fails");
      }
    }
  }
  return out;
}

Configuration aux1_configuration(int s, double a, double b) {
  if (s < 1) fail(ErrorKind::InvalidArgument, "path length must be at least 1");
  if (s == 1 && a != b) fail(ErrorKind::Precondition, "a one-edge path needs a = b");
  const Configuration simplex = regular_simplex(3 * s + 1, a);
  const Configuration path = s == 1 ? regular_simplex(2, a) : to_configuration(path_config(s, a, b));
  Configuration cfg = product_config(simplex, path).product;
  const int ns = static_cast<int>(simplex.size()), nb = s + 1;
  auto& fiber = cfg.copies["fiber"];
  for (int j = 0; j < nb; ++j) {
    IndexTuple t;
    for (int u = 0; u < ns; ++u) t.push_back(u * nb + j);
    fiber.push_back(t);
  }
  auto& ends = cfg.copies["endpoints"];
  for (int u = 0; u < ns; ++u) ends.push_back({u * nb, u * nb + s});
  auto& rect = cfg.copies["rectangle"];
  for (int u = 0; u < ns; ++u) {
    for (int w = u + 1; w < ns; ++w) {
      for (int j = 0; j < s; ++j) {
        rect.push_back({u * nb + j, w * nb + j, w * nb + j + 1, u * nb + j + 1});
      }
    }
  }
  return cfg;
}

PairKind classify_distance_pair(int p, int q, int m) {
  const int nb = m + 1;
  const int su = p / nb, sv = q / nb, bu = p % nb, bv = q % nb;
  if (su != sv && bu == bv) return PairKind::Fiber;
  if (su == sv && std::min(bu, bv) == 0 && std::max(bu, bv) == m) return PairKind::Endpoint;
  return PairKind::Unclassified;
}

long distance_pair_formula(int m) {
  const long n = 3L * m + 1;
  return (m + 1) * (n * (n - 1) / 2) + n;
}

DistancePairCount count_distance_pairs(int m, double x, double y, const ToleranceConfig& tol) {
  if (!(x > y) || !(y > 0)) fail(ErrorKind::Precondition, "count_distance_pairs needs x > y > 0");
  if (m < 2 || m != static_cast<int>(std::ceil(x / y))) {
    fail(ErrorKind::Precondition, "m must equal ceil(x/y) and be at least 2");
  }
  const Configuration cfg = aux1_configuration(m, x, y);
  DistancePairCount out;
  out.formula_q = distance_pair_formula(m);
  std::ostringstream bad;
  int n_bad = 0;
  const int n = static_cast<int>(cfg.size());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (!tol.equal(squared_distance(cfg.points[p], cfg.points[q]), x * x)) continue;
      ++out.enumerated;
      switch (classify_distance_pair(p, q, m)) {
        case PairKind::Fiber: ++out.fiber; break;
        case PairKind::Endpoint: ++out.endpoint; break;
        case PairKind::Unclassified:
          if (n_bad++ < 8) bad << " (" << p << "," << q << ")";
          break;
      }
    }
  }
  if (n_bad > 0) {
    fail(ErrorKind::InvariantFailure, "non-generic lengths: " + std::to_string(n_bad) +
                                          " unclassified distance-x pairs:" + bad.str());
  }
  return out;
}

}  // namespace egr
