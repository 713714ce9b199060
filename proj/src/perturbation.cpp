#include "egr/perturbation.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "egr/error.hpp"

namespace egr {

namespace {

SimplexSpec lowered(const SimplexSpec& spec, double eps) {
  SimplexSpec out = spec;
  for (int i = 0; i < spec.k(); ++i) {
    for (int j = 0; j < spec.k(); ++j) {
      if (i != j) out.sq_dist[i][j] -= 2 * eps * eps;
    }
  }
  return out;
}

double min_entry(const SimplexSpec& spec) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.k(); ++i) {
    for (int j = i + 1; j < spec.k(); ++j) m = std::min(m, spec.sq_dist[i][j]);
  }
  return m;
}

bool strictly_feasible(const SimplexSpec& spec, double eps) {
  const SimplexSpec c = lowered(spec, eps);
  return min_entry(c) > 0 && min_gram_eigenvalue(c) > 0;
}

}  // namespace

double eps_max(const SimplexSpec& spec, const ToleranceConfig& tol) {
  validate(spec, tol);
  if (!is_nondegenerate(spec, tol)) fail(ErrorKind::Degenerate, "eps_max needs a nondegenerate simplex");
  double lo = 0, hi = std::sqrt(min_entry(spec) / 2);
  if (strictly_feasible(spec, hi)) return hi;
  while (hi - lo > 1e-15 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (strictly_feasible(spec, mid) ? lo : hi) = mid;
  }
  return lo;
}

ContractionResult contract_simplex(const SimplexSpec& spec, double eps, const ToleranceConfig& tol) {
  if (!(eps >= 0) || !std::isfinite(eps)) fail(ErrorKind::InvalidArgument, "eps must be finite and nonnegative");
  ContractionResult out;
  out.original = spec;
  out.eps = eps;
  out.eps_max = eps_max(spec, tol);
  out.contracted = lowered(spec, eps);
  if (eps == 0) return out;
  if (min_entry(out.contracted) <= 0) {
    fail(ErrorKind::NotRealizable, "eps = " + std::to_string(eps) +
                                       " drives a squared side length to zero or below");
  }
  if (!is_realizable(out.contracted, tol)) {
    fail(ErrorKind::NotRealizable, "contracted simplex is not realizable at eps = " + std::to_string(eps));
  }
  if (eps >= out.eps_max || cayley_menger_volume(out.contracted) <= 0 ||
      !is_nondegenerate(out.contracted, tol)) {
    fail(ErrorKind::Degenerate, "contracted simplex collapses at eps = " + std::to_string(eps));
  }
  for (int i = 0; i < spec.k(); ++i) {
    for (int j = i + 1; j < spec.k(); ++j) {
      if (!tol.equal(out.contracted.sq_dist[i][j] + 2 * eps * eps, spec.sq_dist[i][j])) {
        fail(ErrorKind::InvariantFailure, "contraction does not invert");
      }
    }
  }
  return out;
}

PerturbationGrid build_perturbation_grid(const SimplexSpec& delta_spec,
                                         const std::vector<int>& m_counts, double eps,
                                         const ToleranceConfig& tol) {
  validate(delta_spec, tol);
  if (!is_nondegenerate(delta_spec, tol)) fail(ErrorKind::Degenerate, "grid simplex is degenerate");
  const int d = delta_spec.k() - 1;
  if (static_cast<int>(m_counts.size()) != d) {
    fail(ErrorKind::DimensionMismatch, "need one subdivision count per nonzero vertex");
  }
  if (!(eps > 0) || !std::isfinite(eps)) fail(ErrorKind::InvalidArgument, "eps must be positive");

  PerturbationGrid g;
  g.delta_spec = delta_spec;
  g.m_counts = m_counts;
  g.eps = eps;
  g.d = d;
  g.w = embed_from_distances(delta_spec);
  for (Point& p : g.w) p = p.padded(d);
  int chain_rows = 0;
  for (int i = 1; i <= d; ++i) {
    const int m = m_counts[i - 1];
    if (m < 2) fail(ErrorKind::InvalidArgument, "subdivision counts must be at least 2");
    const double eps_i = norm(g.w[i]) / m;
    if (!(eps_i < eps)) {
      fail(ErrorKind::Precondition, "eps_" + std::to_string(i) + " = " + std::to_string(eps_i) +
                                        " is not below eps = " + std::to_string(eps));
    }
    chain_rows += m - 1;
  }
  g.n1 = chain_rows + d;

  for (int i = 0; i <= d; ++i) g.B.add(g.w[i].padded(g.n1), "w" + std::to_string(i));
  IndexTuple base;
  for (int i = 0; i <= d; ++i) base.push_back(i);
  g.B.copies["base"] = {base};
  int k = d;
  auto& chains = g.B.copies["chain"];
  for (int i = 1; i <= d; ++i) {
    const int m = m_counts[i - 1];
    IndexTuple chain{0};
    for (int j = 1; j < m; ++j) {
      Point row = (g.w[i] * (static_cast<double>(j) / m)).padded(g.n1);
      row[k++] = eps / 2;
      chain.push_back(g.B.add(row, "c" + std::to_string(i) + "_" + std::to_string(j)));
    }
    chain.push_back(i);
    chains.push_back(chain);
  }
  g.B.notes.push_back("rows are centers of eps-spheres with eps = " + std::to_string(eps));

  // affine independence: Gram of B_r − B_0 is positive definite
  const SimplexSpec rows = SimplexSpec::from_points(g.B.points);
  if (!is_nondegenerate(rows, tol)) fail(ErrorKind::InvariantFailure, "grid rows are affinely dependent");
  for (const IndexTuple& c : chains) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
      if (!(squared_distance(g.B.points[c[j]], g.B.points[c[j + 1]]) < 4 * eps * eps)) {
        fail(ErrorKind::InvariantFailure, "consecutive chain centers are not within 2eps");
      }
    }
  }
  if (!is_connected(intersection_graph(g))) {
    fail(ErrorKind::InvariantFailure, "2eps-intersection graph is disconnected");
  }
  return g;
}

std::vector<std::vector<int>> intersection_graph(const PerturbationGrid& grid) {
  const auto& pts = grid.B.points;
  const double r2 = 4 * grid.eps * grid.eps;
  std::vector<std::vector<int>> adj(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (squared_distance(pts[i], pts[j]) <= r2) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  return adj;
}

bool is_connected(const std::vector<std::vector<int>>& adjacency) {
  if (adjacency.empty()) return true;
  std::vector<char> seen(adjacency.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : adjacency[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == adjacency.size();
}

Configuration lifted_base_copy(const PerturbationGrid& grid, const Point& unit_dir,
                               const ToleranceConfig& tol) {
  Point dir;
  if (static_cast<int>(unit_dir.dim()) == grid.n1) {
    dir = unit_dir;
  } else if (static_cast<int>(unit_dir.dim()) == grid.n1 - grid.d) {
    dir = Point(static_cast<std::size_t>(grid.n1));
    for (int i = 0; i < grid.n1 - grid.d; ++i) dir[grid.d + i] = unit_dir[i];
  } else {
    fail(ErrorKind::DimensionMismatch, "lift direction has the wrong dimension");
  }
  if (std::fabs(norm(dir) - 1) > 1e-9) fail(ErrorKind::InvalidArgument, "lift direction must be a unit vector");
  Configuration out;
  for (int i = 0; i <= grid.d; ++i) out.add(grid.B.points[i] + dir * grid.eps, "q" + std::to_string(i));
  if (!congruence_check(SimplexSpec::from_points(out.points), grid.delta_spec, tol)) {
    fail(ErrorKind::InvariantFailure, "lifted base copy is not congruent to the grid simplex");
  }
  return out;
}

int ProductSpace::total() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

int ProductSpace::offset(int fiber) const {
  if (fiber < 0 || fiber >= static_cast<int>(dims.size())) {
    fail(ErrorKind::OutOfDomain, "fiber index " + std::to_string(fiber) + " out of range");
  }
  int o = 0;
  for (int i = 0; i < fiber; ++i) o += dims[i];
  return o;
}

Point eps_sphere_point(const ProductSpace& space, const EpsSphereAnchor& a, const Point& dir) {
  const int off = space.offset(a.fiber);
  if (static_cast<int>(a.anchor.dim()) != space.total()) {
    fail(ErrorKind::DimensionMismatch, "anchor does not live in the product space");
  }
  if (static_cast<int>(dir.dim()) != space.dims[a.fiber]) {
    fail(ErrorKind::DimensionMismatch, "direction does not live in the fiber");
  }
  if (std::fabs(norm(dir) - 1) > 1e-9) fail(ErrorKind::InvalidArgument, "direction must be a unit vector");
  Point p = a.anchor;
  for (std::size_t i = 0; i < dir.dim(); ++i) p[off + i] += a.eps * dir[i];
  return p;
}

std::vector<Point> orthogonal_lift(const std::vector<Point>& v, double eps) {
  if (v.empty()) return {};
  const std::size_t n = v.front().dim(), k = v.size();
  std::vector<Point> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (v[i].dim() != n) fail(ErrorKind::DimensionMismatch, "lift input dimensions differ");
    Point y = v[i].padded(n + k);
    y[n + i] = eps;
    out.push_back(y);
  }
  return out;
}

double orthogonal_lift_check(double base_sq, double eps) {
  if (!(base_sq >= 0)) fail(ErrorKind::InvalidArgument, "squared distance must be nonnegative");
  return base_sq + 2 * eps * eps;
}

}  // namespace egr
