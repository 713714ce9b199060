#pragma once

#include <vector>

#include "egr/geometry.hpp"

namespace egr {

// n points pairwise at distance x in E^{n-1}, triangular frame.
Configuration regular_simplex(int n, double x);

struct PathConfig {
  int t = 0;
  double x = 0, y = 0;
  std::vector<Point> points;  // t+1 points in E², v0 = (0,0), v_t = (x,0)
};

// Equal chords y on a circular arc whose endpoints are x apart.
PathConfig path_config(int t, double x, double y);
// Copies "edge" (consecutive pairs) and "endpoints".
Configuration to_configuration(const PathConfig& path);

struct ProductConfig {
  Configuration left, right, product;  // product index i * |right| + j
};

ProductConfig product_config(const Configuration& left, const Configuration& right,
                             const ToleranceConfig& tol = {});

// S_{3s+1}(a) × B_s(a,b) with copies "fiber" (the simplex at each path vertex),
// "endpoints" (pairs joining path vertices 0 and s) and "rectangle" (a×b rectangles).
Configuration aux1_configuration(int s, double a, double b);

enum class PairKind { Fiber, Endpoint, Unclassified };

// Classifies the pair (p, q) of product indices at distance x, where the path
// factor has m+1 vertices.
PairKind classify_distance_pair(int p, int q, int m);

struct DistancePairCount {
  long enumerated = 0;
  long formula_q = 0;
  long fiber = 0;
  long endpoint = 0;
};

// (m+1)·C(3m+1, 2) + 3m + 1
long distance_pair_formula(int m);
DistancePairCount count_distance_pairs(int m, double x, double y,
                                       const ToleranceConfig& tol = {});

}  // namespace egr
