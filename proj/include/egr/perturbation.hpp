#pragma once

#include <vector>

#include "egr/geometry.hpp"

namespace egr {

struct ContractionResult {
  SimplexSpec original;
  double eps = 0;
  SimplexSpec contracted;  // every off-diagonal entry lowered by 2ε²
  double eps_max = 0;
};

// Supremum of ε keeping the contracted simplex realizable and nondegenerate.
double eps_max(const SimplexSpec& spec, const ToleranceConfig& tol = {});
ContractionResult contract_simplex(const SimplexSpec& spec, double eps,
                                   const ToleranceConfig& tol = {});

struct PerturbationGrid {
  SimplexSpec delta_spec;
  std::vector<int> m_counts;  // one per nonzero vertex w_1..w_d
  double eps = 0;
  int d = 0;
  int n1 = 0;                 // Σ(m_i − 1) + d
  std::vector<Point> w;       // w_0 = 0, …, w_d in E^d
  Configuration B;            // n1 + 1 rows in E^{n1}; rows 0..d are the base
};

PerturbationGrid build_perturbation_grid(const SimplexSpec& delta_spec,
                                         const std::vector<int>& m_counts, double eps,
                                         const ToleranceConfig& tol = {});
// Graph on the rows of B joining centers at distance at most 2ε.
std::vector<std::vector<int>> intersection_graph(const PerturbationGrid& grid);
bool is_connected(const std::vector<std::vector<int>>& adjacency);

// Base rows shifted by ε·unit_dir. unit_dir lives in E^{n1} or in the
// (n1 − d)-dimensional fiber block.
Configuration lifted_base_copy(const PerturbationGrid& grid, const Point& unit_dir,
                               const ToleranceConfig& tol = {});

struct ProductSpace {
  std::vector<int> dims;  // P_0 × … × P_m
  int total() const;
  int offset(int fiber) const;
};

struct EpsSphereAnchor {
  Point anchor;
  int fiber = 0;
  double eps = 0;
};

// anchor + ε·dir inside the given fiber; dir is a unit vector of that fiber.
Point eps_sphere_point(const ProductSpace& space, const EpsSphereAnchor& a, const Point& dir);

// y_i = (v_i, ε·e_i): mutually orthogonal offsets of length ε.
std::vector<Point> orthogonal_lift(const std::vector<Point>& v, double eps);
// Squared distance between two lifted points whose base points are base_sq apart.
double orthogonal_lift_check(double base_sq, double eps);

}  // namespace egr
