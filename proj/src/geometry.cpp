#include "egr/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "egr/error.hpp"

namespace egr {

void ToleranceConfig::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1e-3; };
  if (!ok(rel_tol) || !ok(abs_tol)) {
    fail(ErrorKind::InvalidArgument, "tolerances must lie in (0, 1e-3)");
  }
}

bool ToleranceConfig::equal(double d1, double d2) const {
  return std::fabs(d1 - d2) <= rel_tol * std::max(std::fabs(d1), std::fabs(d2)) + abs_tol;
}

Point Point::padded(std::size_t dim) const {
  Point p(dim);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i < dim) {
      p.c_[i] = c_[i];
    } else if (c_[i] != 0.0) {
      fail(ErrorKind::DimensionMismatch, "cannot truncate a nonzero coordinate");
    }
  }
  return p;
}

bool Point::finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Point& Point::operator+=(const Point& o) {
  if (o.dim() != dim()) fail(ErrorKind::DimensionMismatch, "point addition");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  if (o.dim() != dim()) fail(ErrorKind::DimensionMismatch, "point subtraction");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(Point a, double s) { return a *= s; }
Point operator*(double s, Point a) { return a *= s; }

double dot(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

Point unit_vector(std::size_t dim, std::size_t axis) {
  Point p(dim);
  p[axis] = 1.0;
  return p;
}

double squared_distance(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) {
    fail(ErrorKind::DimensionMismatch,
         "dimensions " + std::to_string(p.dim()) + " and " + std::to_string(q.dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

std::vector<Point> gram_schmidt(const std::vector<Point>& vs, double eps) {
  std::vector<Point> out;
  for (const auto& v : vs) {
    Point r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) r -= e * dot(r, e);
    }
    const double n = norm(r);
    if (n > eps * std::max(1.0, norm(v))) out.push_back(r * (1.0 / n));
  }
  return out;
}

Point orthogonal_unit(const std::vector<Point>& basis, const std::vector<Point>& candidates) {
  Point best;
  double best_norm = 0.0;
  for (const auto& c : candidates) {
    Point r = c;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) r -= e * dot(r, e);
    }
    const double n = norm(r);
    if (n > best_norm * (1.0 + 1e-12)) {
      best_norm = n;
      best = r;
    }
  }
  if (best_norm < 1e-9) fail(ErrorKind::Degenerate, "no direction orthogonal to the given span");
  return best * (1.0 / best_norm);
}

int Configuration::add(const Point& p, const std::string& label) {
  if (!points.empty() && p.dim() != dim()) {
    fail(ErrorKind::DimensionMismatch, "configuration point dimension");
  }
  if (!labels.empty() || !label.empty()) {
    labels.resize(points.size());
    labels.push_back(label);
  }
  points.push_back(p);
  return static_cast<int>(points.size()) - 1;
}

std::vector<Point> Configuration::select(const IndexTuple& idx) const {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (int i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= points.size()) {
      fail(ErrorKind::InvalidArgument, "index " + std::to_string(i) + " out of range");
    }
    out.push_back(points[i]);
  }
  return out;
}

std::vector<std::pair<int, int>> coincident_pairs(const std::vector<Point>& pts,
                                                  const ToleranceConfig& tol) {
  std::vector<std::pair<int, int>> out;
  if (pts.size() < 2) return out;
  const std::size_t dim = pts.front().dim();
  // Sweep along a fixed generic direction; only points whose projections are
  // close can coincide.
  Point dir(dim);
  for (std::size_t i = 0; i < dim; ++i) dir[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) + 0.05;
  dir *= 1.0 / norm(dir);
  std::vector<std::pair<double, int>> proj;
  proj.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    proj.emplace_back(dot(pts[i], dir), static_cast<int>(i));
  }
  std::sort(proj.begin(), proj.end());
  const double window = std::sqrt(tol.abs_tol) * 2.0 + 1e-9;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    for (std::size_t j = i + 1; j < proj.size() && proj[j].first - proj[i].first <= window; ++j) {
      const int a = proj[i].second;
      const int b = proj[j].second;
      if (tol.equal(squared_distance(pts[a], pts[b]), 0.0)) {
        out.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate(const Configuration& cfg, const ToleranceConfig& tol) {
  tol.validate();
  const std::size_t dim = cfg.dim();
  if (!cfg.points.empty() && dim < 1) fail(ErrorKind::InvalidArgument, "dimension must be >= 1");
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    if (cfg.points[i].dim() != dim) {
      fail(ErrorKind::DimensionMismatch, "point " + std::to_string(i) + " has dimension " +
                                             std::to_string(cfg.points[i].dim()));
    }
    if (!cfg.points[i].finite()) {
      fail(ErrorKind::InvalidArgument, "point " + std::to_string(i) + " is not finite");
    }
  }
  if (!cfg.labels.empty() && cfg.labels.size() != cfg.points.size()) {
    fail(ErrorKind::InvalidArgument, "label count does not match point count");
  }
  for (const auto& [name, list] : cfg.copies) {
    for (const auto& tuple : list) {
      for (int i : tuple) {
        if (i < 0 || static_cast<std::size_t>(i) >= cfg.points.size()) {
          fail(ErrorKind::InvalidArgument,
               "copy group '" + name + "' has index " + std::to_string(i) + " out of range");
        }
      }
    }
  }
  if (!cfg.allow_coincident) {
    const auto dup = coincident_pairs(cfg.points, tol);
    if (!dup.empty()) {
      fail(ErrorKind::Coincident, "points " + std::to_string(dup[0].first) + " and " +
                                      std::to_string(dup[0].second) + " coincide");
    }
  }
}

SimplexSpec SimplexSpec::from_points(const std::vector<Point>& pts) {
  SimplexSpec s;
  const std::size_t k = pts.size();
  s.sq_dist.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      s.sq_dist[i][j] = s.sq_dist[j][i] = squared_distance(pts[i], pts[j]);
    }
  }
  return s;
}

SimplexSpec SimplexSpec::regular(int k, double side) {
  SimplexSpec s;
  s.sq_dist.assign(k, std::vector<double>(k, side * side));
  for (int i = 0; i < k; ++i) s.sq_dist[i][i] = 0.0;
  return s;
}

namespace {

double spec_scale(const SimplexSpec& spec) {
  double m = 0.0;
  for (const auto& row : spec.sq_dist) {
    for (double v : row) m = std::max(m, std::fabs(v));
  }
  return m;
}

void check_structure(const SimplexSpec& spec, const ToleranceConfig& tol) {
  const int k = spec.k();
  if (k < 2) fail(ErrorKind::InvalidArgument, "simplex spec needs k >= 2");
  for (const auto& row : spec.sq_dist) {
    if (static_cast<int>(row.size()) != k) fail(ErrorKind::InvalidArgument, "matrix is not square");
  }
  for (int i = 0; i < k; ++i) {
    if (spec.sq_dist[i][i] != 0.0) fail(ErrorKind::InvalidArgument, "nonzero diagonal entry");
    for (int j = i + 1; j < k; ++j) {
      const double a = spec.sq_dist[i][j];
      const double b = spec.sq_dist[j][i];
      if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::InvalidArgument, "non-finite entry");
      if (!tol.equal(a, b)) fail(ErrorKind::InvalidArgument, "matrix is not symmetric");
      if (a <= 0.0) {
        fail(ErrorKind::InvalidArgument, "off-diagonal entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") is not positive");
      }
    }
  }
}

Eigen::MatrixXd gram(const SimplexSpec& spec) {
  const int n = spec.k() - 1;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = 0.5 * (spec.sq_dist[0][i + 1] + spec.sq_dist[0][j + 1] - spec.sq_dist[i + 1][j + 1]);
    }
  }
  return g;
}

}  // namespace

std::vector<std::vector<double>> gram_matrix(const SimplexSpec& spec) {
  const Eigen::MatrixXd g = gram(spec);
  std::vector<std::vector<double>> out(g.rows(), std::vector<double>(g.cols()));
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) out[i][j] = g(i, j);
  }
  return out;
}

double min_gram_eigenvalue(const SimplexSpec& spec) {
  if (spec.k() < 2) fail(ErrorKind::InvalidArgument, "simplex spec needs k >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram(spec), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_realizable(const SimplexSpec& spec, const ToleranceConfig& tol) {
  try {
    check_structure(spec, tol);
  } catch (const Error&) {
    return false;
  }
  return min_gram_eigenvalue(spec) >= -tol.rel_tol * spec_scale(spec);
}

bool is_nondegenerate(const SimplexSpec& spec, const ToleranceConfig& tol) {
  try {
    check_structure(spec, tol);
  } catch (const Error&) {
    return false;
  }
  return min_gram_eigenvalue(spec) > tol.rel_tol * spec_scale(spec);
}

void validate(const SimplexSpec& spec, const ToleranceConfig& tol) {
  tol.validate();
  check_structure(spec, tol);
  if (min_gram_eigenvalue(spec) < -tol.rel_tol * spec_scale(spec)) {
    fail(ErrorKind::NotRealizable, "distance matrix is not realizable in Euclidean space");
  }
}

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix distances(const std::vector<Point>& pts) {
  return SimplexSpec::from_points(pts).sq_dist;
}

// Sorted distances from each vertex; a vertex of A can only map to a vertex of
// B with an equal profile.
std::vector<std::vector<double>> profiles(const Matrix& d) {
  std::vector<std::vector<double>> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[i] = d[i];
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

bool same_sorted(const std::vector<double>& a, const std::vector<double>& b,
                 const ToleranceConfig& tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!tol.equal(a[i], b[i])) return false;
  }
  return true;
}

std::optional<std::vector<int>> match_matrices(const Matrix& a, const Matrix& b,
                                               const ToleranceConfig& tol) {
  const std::size_t n = a.size();
  if (n != b.size()) fail(ErrorKind::InvalidArgument, "size mismatch in congruence check");
  if (n > static_cast<std::size_t>(kCongruenceCap)) {
    fail(ErrorKind::CapExceeded, "congruence check is capped at 12 points");
  }
  std::vector<double> ma, mb;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ma.push_back(a[i][j]);
      mb.push_back(b[i][j]);
    }
  }
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  if (!same_sorted(ma, mb, tol)) return std::nullopt;

  const auto pa = profiles(a);
  const auto pb = profiles(b);
  std::vector<std::vector<int>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (same_sorted(pa[i], pb[j], tol)) cand[i].push_back(static_cast<int>(j));
    }
    if (cand[i].empty()) return std::nullopt;
  }

  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (int j : cand[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < i && ok; ++t) ok = tol.equal(a[i][t], b[j][perm[t]]);
      if (!ok) continue;
      perm[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    perm[i] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return perm;
}

}  // namespace

std::optional<std::vector<int>> congruence_check(const std::vector<Point>& a,
                                                 const std::vector<Point>& b,
                                                 const ToleranceConfig& tol) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidArgument, "size mismatch in congruence check");
  if (a.size() > static_cast<std::size_t>(kCongruenceCap)) {
    fail(ErrorKind::CapExceeded, "congruence check is capped at 12 points");
  }
  return match_matrices(distances(a), distances(b), tol);
}

std::optional<std::vector<int>> congruence_check(const SimplexSpec& a, const SimplexSpec& b,
                                                 const ToleranceConfig& tol) {
  return match_matrices(a.sq_dist, b.sq_dist, tol);
}

bool ordered_congruent(const std::vector<Point>& pts, const SimplexSpec& spec,
                       const ToleranceConfig& tol) {
  if (static_cast<int>(pts.size()) != spec.k()) return false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!tol.equal(squared_distance(pts[i], pts[j]), spec.sq_dist[i][j])) return false;
    }
  }
  return true;
}

CopyList enumerate_copies(const Configuration& cfg, const SimplexSpec& spec,
                          const ToleranceConfig& tol) {
  const int k = spec.k();
  const int n = static_cast<int>(cfg.size());
  if (k < 2) fail(ErrorKind::InvalidArgument, "simplex spec needs k >= 2");
  if (k > kCopySpecCap) fail(ErrorKind::CapExceeded, "copy enumeration is capped at k = 6");
  if (n > kCopyConfigCap) {
    fail(ErrorKind::CapExceeded, "copy enumeration is capped at 200 configuration points");
  }
  if (k > n) return {};

  Matrix d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = squared_distance(cfg.points[i], cfg.points[j]);
  }

  // Extend spec vertices in an order where each new vertex is pinned by the
  // rarest available distance: start from the endpoints of the largest entry.
  std::vector<int> order;
  {
    int bi = 0, bj = 1;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (spec.sq_dist[i][j] > spec.sq_dist[bi][bj]) {
          bi = i;
          bj = j;
        }
      }
    }
    order = {bi, bj};
    for (int i = 0; i < k; ++i) {
      if (i != bi && i != bj) order.push_back(i);
    }
  }

  std::set<IndexTuple> found;
  std::vector<int> assign(k, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      IndexTuple t(assign.begin(), assign.end());
      std::sort(t.begin(), t.end());
      found.insert(t);
      return;
    }
    const int sv = order[depth];
    for (int q = 0; q < n; ++q) {
      if (used[q]) continue;
      bool ok = true;
      for (int t = 0; t < depth && ok; ++t) {
        ok = tol.equal(d[q][assign[order[t]]], spec.sq_dist[sv][order[t]]);
      }
      if (!ok) continue;
      assign[sv] = q;
      used[q] = 1;
      self(self, depth + 1);
      used[q] = 0;
    }
    assign[sv] = -1;
  };
  rec(rec, 0);
  return CopyList(found.begin(), found.end());
}

double cayley_menger_volume(const SimplexSpec& spec) {
  validate(spec);
  const int k = spec.k();
  Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(k + 1, k + 1);
  cm(0, 0) = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) cm(i + 1, j + 1) = spec.sq_dist[i][j];
  }
  const double det = cm.fullPivLu().determinant();
  double denom = std::pow(2.0, k - 1);
  double fact = 1.0;
  for (int i = 2; i <= k - 1; ++i) fact *= i;
  denom *= fact * fact;
  const double v2 = ((k % 2 == 0) ? det : -det) / denom;
  const double scale = std::pow(spec_scale(spec), k - 1);
  if (v2 < -1e-9 * scale) {
    fail(ErrorKind::NotRealizable, "negative Cayley-Menger determinant");
  }
  if (v2 <= 1e-12 * scale) return 0.0;
  return std::sqrt(v2);
}

std::vector<Point> embed_from_distances(const SimplexSpec& spec) {
  validate(spec);
  const int k = spec.k();
  const int n = k - 1;
  const Eigen::MatrixXd g = gram(spec);
  const double scale = spec_scale(spec);
  const double zero = 1e-12 * scale;

  // Point i (1-based) is row i-1 of a lower-triangular factor of the Gram
  // matrix; a vanishing pivot means the configuration is flat along that axis.
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double s = g(i, j);
      for (int t = 0; t < j; ++t) s -= l(i, t) * l(j, t);
      l(i, j) = (l(j, j) > 0.0) ? s / l(j, j) : 0.0;
    }
    double s = g(i, i);
    for (int t = 0; t < i; ++t) s -= l(i, t) * l(i, t);
    if (s < -1e-9 * scale) fail(ErrorKind::NotRealizable, "negative pivot in embedding");
    l(i, i) = (s > zero) ? std::sqrt(s) : 0.0;
  }

  std::vector<Point> pts(k, Point(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) pts[i + 1][j] = l(i, j);
  }
  const ToleranceConfig loose{1e-7, 1e-10};
  if (!ordered_congruent(pts, spec, loose)) {
    fail(ErrorKind::NotRealizable, "embedding does not reproduce the distance matrix");
  }
  return pts;
}

}  // namespace egr
