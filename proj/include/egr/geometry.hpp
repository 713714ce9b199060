#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace egr {

struct ToleranceConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;

  void validate() const;
  // |d1 - d2| <= rel_tol * max(d1, d2) + abs_tol, applied to squared distances.
  bool equal(double d1, double d2) const;
};

class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim) : c_(dim, 0.0) {}
  Point(std::initializer_list<double> values) : c_(values) {}
  explicit Point(std::vector<double> values) : c_(std::move(values)) {}

  std::size_t dim() const { return c_.size(); }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

  // Zero-extends (or truncates zeros) to the requested dimension.
  Point padded(std::size_t dim) const;
  bool finite() const;

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

 private:
  std::vector<double> c_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(Point a, double s);
Point operator*(double s, Point a);
double dot(const Point& a, const Point& b);
double norm(const Point& a);
Point unit_vector(std::size_t dim, std::size_t axis);

double squared_distance(const Point& p, const Point& q);

// Orthonormalizes vs in order, dropping vectors that are (numerically)
// dependent on their predecessors.
std::vector<Point> gram_schmidt(const std::vector<Point>& vs, double eps = 1e-10);
// Unit vector orthogonal to the orthonormal set `basis`, taken from the
// candidate with the largest residual. Throws if every residual vanishes.
Point orthogonal_unit(const std::vector<Point>& basis, const std::vector<Point>& candidates);

using IndexTuple = std::vector<int>;
using CopyList = std::vector<IndexTuple>;

struct Configuration {
  std::vector<Point> points;
  std::vector<std::string> labels;  // empty or one per point
  std::map<std::string, CopyList> copies;
  std::vector<std::string> notes;
  bool allow_coincident = false;

  std::size_t size() const { return points.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().dim(); }
  int add(const Point& p, const std::string& label = {});
  std::vector<Point> select(const IndexTuple& idx) const;
};

// Throws Error on any broken invariant.
void validate(const Configuration& cfg, const ToleranceConfig& tol = {});

struct SimplexSpec {
  std::vector<std::vector<double>> sq_dist;

  int k() const { return static_cast<int>(sq_dist.size()); }
  static SimplexSpec from_points(const std::vector<Point>& pts);
  static SimplexSpec regular(int k, double side);
};

// Structural checks plus realizability; throws Error.
void validate(const SimplexSpec& spec, const ToleranceConfig& tol = {});
bool is_realizable(const SimplexSpec& spec, const ToleranceConfig& tol = {});
// Realizable with strictly positive (k-1)-content.
bool is_nondegenerate(const SimplexSpec& spec, const ToleranceConfig& tol = {});

// Gram matrix of points 1..k-1 relative to point 0, row-major (k-1)x(k-1).
std::vector<std::vector<double>> gram_matrix(const SimplexSpec& spec);
double min_gram_eigenvalue(const SimplexSpec& spec);

std::optional<std::vector<int>> congruence_check(const std::vector<Point>& a,
                                                 const std::vector<Point>& b,
                                                 const ToleranceConfig& tol = {});
std::optional<std::vector<int>> congruence_check(const SimplexSpec& a, const SimplexSpec& b,
                                                 const ToleranceConfig& tol = {});
// Vertex i of pts must play vertex i of spec.
bool ordered_congruent(const std::vector<Point>& pts, const SimplexSpec& spec,
                       const ToleranceConfig& tol = {});

CopyList enumerate_copies(const Configuration& cfg, const SimplexSpec& spec,
                          const ToleranceConfig& tol = {});

double cayley_menger_volume(const SimplexSpec& spec);
std::vector<Point> embed_from_distances(const SimplexSpec& spec);

// Returns pairs (i, j), i < j, of distinct indices whose points coincide.
std::vector<std::pair<int, int>> coincident_pairs(const std::vector<Point>& pts,
                                                  const ToleranceConfig& tol = {});

inline constexpr int kCongruenceCap = 12;
inline constexpr int kCopySpecCap = 6;
inline constexpr int kCopyConfigCap = 200;

}  // namespace egr
