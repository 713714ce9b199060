#include "egr/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "egr/error.hpp"
#include "egr/rectangle.hpp"

namespace egr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

SimplexSpec reordered(const SimplexSpec& spec, const std::array<int, 4>& ord) {
  SimplexSpec out;
  out.sq_dist.assign(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out.sq_dist[i][j] = spec.sq_dist[ord[i]][ord[j]];
  }
  return out;
}

// Remaining two vertices of {0,1,2,3} \ {p,q} in increasing order.
std::pair<int, int> others(int p, int q) {
  int r = -1, s = -1;
  for (int i = 0; i < 4; ++i) {
    if (i == p || i == q) continue;
    (r < 0 ? r : s) = i;
  }
  return {r, s};
}

std::array<int, 3> face_without(int apex) {
  std::array<int, 3> f{};
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != apex) f[n++] = i;
  }
  return f;
}

// 16·Area² from squared side lengths.
double heron16(double a2, double b2, double c2) {
  return 2 * (a2 * b2 + b2 * c2 + c2 * a2) - a2 * a2 - b2 * b2 - c2 * c2;
}

Point generic_unit(std::mt19937_64& rng, std::size_t dim, const std::vector<Point>& basis) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Point v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = n(rng);
    for (const Point& b : basis) v -= b * dot(v, b);
    for (const Point& b : basis) v -= b * dot(v, b);
    const double len = norm(v);
    if (len > 1e-3) return v * (1.0 / len);
  }
  fail(ErrorKind::InvariantFailure, "no generic direction left in the ambient space");
}

// Origin plus orthonormal in-plane axes of a placed triangle.
struct TriangleFrame {
  Point origin, e0, e1;
  Point at(double u, double v) const { return origin + e0 * u + e1 * v; }
};

TriangleFrame frame_of(const Point& x0, const Point& x1, const Point& x2) {
  TriangleFrame f{x0, unit_vector(x0.dim(), 0), unit_vector(x0.dim(), 0)};
  const Point d1 = x1 - x0;
  f.e0 = d1 * (1.0 / norm(d1));
  Point d2 = x2 - x0;
  d2 -= f.e0 * dot(d2, f.e0);
  f.e1 = d2 * (1.0 / norm(d2));
  return f;
}

// Local coordinates of the face (f0, f1, f2) and of the apex over it.
struct FaceLocal {
  std::array<int, 3> f{};
  int apex = 0;
  std::array<Point, 3> face;  // E³, third coordinate zero
  Point apex_pt;              // E³, third coordinate is the height
};

FaceLocal face_local(const SimplexSpec& spec, int apex) {
  FaceLocal out;
  out.f = face_without(apex);
  out.apex = apex;
  const auto pts = embed_from_distances(reordered(spec, {out.f[0], out.f[1], out.f[2], apex}));
  for (int i = 0; i < 3; ++i) out.face[i] = pts[i].padded(3);
  out.apex_pt = pts[3].padded(3);
  out.apex_pt[2] = std::fabs(out.apex_pt[2]);
  return out;
}

struct DensePoints {
  Point z;
  std::array<Point, 3> y;
};

// X[j] plays face vertex f[j] of the H_max face.
DensePoints dense_on(const TetraProfile& prof, const std::array<Point, 3>& X, std::mt19937_64& rng) {
  const std::size_t dim = X[0].dim();
  if (dim < 5) fail(ErrorKind::DimensionMismatch, "dense quadruples need at least five dimensions");
  const FaceLocal hf = face_local(prof.spec, prof.hmax_apex);
  const TriangleFrame tf = frame_of(X[0], X[1], X[2]);
  const Point foot = tf.at(hf.apex_pt[0], hf.apex_pt[1]);
  std::vector<Point> basis{tf.e0, tf.e1};
  const Point n0 = generic_unit(rng, dim, basis);
  basis.push_back(n0);
  const Point n1 = generic_unit(rng, dim, basis);
  basis.push_back(n1);
  const Point n2 = generic_unit(rng, dim, basis);

  const double H = prof.H_max, rho = prof.rho_min;
  const Point center = foot + n0 * std::sqrt(H * H - rho * rho);
  const FaceLocal rf = face_local(prof.spec, prof.rho_apex);
  // circumcenter of the local rho face: g0 = 0, g1 = (p, 0), g2 = (u, v)
  const double p = rf.face[1][0], u = rf.face[2][0], v = rf.face[2][1];
  const double cx = p / 2, cy = (u * u + v * v - p * u) / (2 * v);
  DensePoints out;
  for (int j = 0; j < 3; ++j) {
    out.y[j] = center + n1 * (rf.face[j][0] - cx) + n2 * (rf.face[j][1] - cy);
  }
  const TriangleFrame yf = frame_of(out.y[0], out.y[1], out.y[2]);
  const Point m = generic_unit(rng, dim, {yf.e0, yf.e1});
  out.z = yf.at(rf.apex_pt[0], rf.apex_pt[1]) + m * rf.apex_pt[2];
  return out;
}

}  // namespace

HingeGeometry hinge_geometry(const SimplexSpec& spec, int p, int q) {
  if (spec.k() != 4) fail(ErrorKind::InvalidArgument, "hinge geometry needs a tetrahedron");
  if (p == q || p < 0 || q < 0 || p > 3 || q > 3) fail(ErrorKind::InvalidArgument, "bad hinge roles");
  HingeGeometry g;
  g.p = p;
  g.q = q;
  std::tie(g.r, g.s) = others(p, q);
  const auto pts = embed_from_distances(reordered(spec, {q, g.r, g.s, p}));
  g.base[q] = pts[0].padded(4);
  g.base[g.r] = pts[1].padded(4);
  g.base[g.s] = pts[2].padded(4);
  const Point apex = pts[3].padded(4);
  g.foot = Point{apex[0], apex[1], 0.0, 0.0};
  g.height = std::fabs(apex[2]);
  g.hinge_foot = norm(g.foot);
  g.theta = std::atan2(g.height, g.hinge_foot);
  return g;
}

Point hinge_apex(const HingeGeometry& g, double gamma) {
  return Point{g.foot[0], g.foot[1], g.height * std::cos(gamma), g.height * std::sin(gamma)};
}

TetraProfile tetra_profile(const SimplexSpec& spec, const ToleranceConfig& tol) {
  if (spec.k() != 4) fail(ErrorKind::InvalidArgument, "tetra profile needs a 4-point spec");
  validate(spec, tol);
  if (!is_nondegenerate(spec, tol)) fail(ErrorKind::Degenerate, "tetrahedron is degenerate");
  TetraProfile prof;
  prof.spec = spec;
  const double vol = cayley_menger_volume(spec);
  if (!(vol > 0)) fail(ErrorKind::Degenerate, "tetrahedron has zero volume");
  const auto& d = spec.sq_dist;
  for (int i = 0; i < 4; ++i) {
    const auto f = face_without(i);
    const double a2 = d[f[1]][f[2]], b2 = d[f[0]][f[2]], c2 = d[f[0]][f[1]];
    const double area = std::sqrt(std::max(0.0, heron16(a2, b2, c2))) / 4;
    prof.heights[i] = 3 * vol / area;
    prof.circumradii[i] = std::sqrt(a2 * b2 * c2) / (4 * area);
  }
  prof.hmax_apex = static_cast<int>(std::max_element(prof.heights.begin(), prof.heights.end()) -
                                    prof.heights.begin());
  prof.rho_apex = static_cast<int>(std::min_element(prof.circumradii.begin(), prof.circumradii.end()) -
                                   prof.circumradii.begin());
  prof.H_max = prof.heights[prof.hmax_apex];
  prof.rho_min = prof.circumradii[prof.rho_apex];
  prof.condition = prof.H_max > prof.rho_min;
  prof.hinge = hinge_geometry(spec, 0, 1);
  prof.theta = prof.hinge.theta;
  const double A2 = prof.hinge.height * prof.hinge.height;
  const double B2 = prof.hinge.hinge_foot * prof.hinge.hinge_foot;
  prof.cos_2theta = (B2 - A2) / (A2 + B2);
  prof.apex_foot = prof.hinge.foot;
  prof.apex_height = prof.hinge.height;
  return prof;
}

Point apex_circle(const TetraProfile& profile, double gamma) { return hinge_apex(profile.hinge, gamma); }

double angle_at(const Point& a, const Point& b, const Point& c) {
  Point u = a - b, v = c - b;
  const double nu = norm(u), nv = norm(v);
  if (nu == 0 || nv == 0) fail(ErrorKind::Degenerate, "angle at a coincident vertex");
  u *= 1 / nu;
  v *= 1 / nv;
  return 2 * std::atan2(norm(u - v), norm(u + v));
}

HingePair glue_two_copies(const TetraProfile& profile, double phi) {
  const double limit = 2 * profile.theta;
  if (!(phi > 0) || phi > limit * (1 + kAngleSlack)) {
    fail(ErrorKind::AngleCondition, "phi = " + std::to_string(phi) + " outside (0, 2theta = " +
                                        std::to_string(limit) + "]");
  }
  const HingeGeometry& g = profile.hinge;
  const double A2 = g.height * g.height, B2 = g.hinge_foot * g.hinge_foot;
  const double cg = std::clamp((std::cos(phi) * (A2 + B2) - B2) / A2, -1.0, 1.0);
  HingePair out;
  out.gamma = 0;
  out.gamma_prime = std::acos(cg);
  out.a = hinge_apex(g, out.gamma);
  out.a_prime = hinge_apex(g, out.gamma_prime);
  out.b = g.base[1];
  out.c = g.base[2];
  out.d = g.base[3];
  const ToleranceConfig tol;
  if (tol.equal(squared_distance(out.a, out.a_prime), 0)) {
    fail(ErrorKind::Coincident, "phi is too small: the two apexes coincide");
  }
  out.phi = angle_at(out.a, out.b, out.a_prime);
  if (std::fabs(out.phi - phi) > 1e-9) fail(ErrorKind::InvariantFailure, "realized hinge angle drifts");
  if (!ordered_congruent({out.a, out.b, out.c, out.d}, profile.spec, tol) ||
      !ordered_congruent({out.a_prime, out.b, out.c, out.d}, profile.spec, tol)) {
    fail(ErrorKind::InvariantFailure, "hinge copies are not congruent to the spec");
  }
  return out;
}

DenseQuadruple dense_quadruple(const TetraProfile& profile, std::uint64_t seed) {
  if (!profile.condition) {
    fail(ErrorKind::HypothesisViolated, "H_max = " + std::to_string(profile.H_max) +
                                            " does not exceed rho_min = " + std::to_string(profile.rho_min));
  }
  std::mt19937_64 rng(seed);
  const FaceLocal hf = face_local(profile.spec, profile.hmax_apex);
  DenseQuadruple q;
  for (int j = 0; j < 3; ++j) q.x[j] = hf.face[j].padded(5);
  const DensePoints dp = dense_on(profile, q.x, rng);
  q.z = dp.z;
  q.y = dp.y;
  const auto rf = face_without(profile.rho_apex);
  q.copies[0].assign(4, 0);
  q.copies[0][profile.rho_apex] = 0;
  for (int j = 0; j < 3; ++j) q.copies[0][rf[j]] = 1 + j;
  for (int i = 0; i < 3; ++i) {
    q.copies[1 + i].assign(4, 0);
    q.copies[1 + i][profile.hmax_apex] = 1 + i;
    for (int j = 0; j < 3; ++j) q.copies[1 + i][hf.f[j]] = 4 + j;
  }
  const std::vector<Point> all{q.z, q.y[0], q.y[1], q.y[2], q.x[0], q.x[1], q.x[2]};
  const ToleranceConfig tol;
  for (const auto& c : q.copies) {
    std::vector<Point> pts;
    for (int i : c) pts.push_back(all[i]);
    if (!ordered_congruent(pts, profile.spec, tol)) {
      fail(ErrorKind::InvariantFailure, "dense quadruple copy is not congruent to the spec");
    }
  }
  if (!coincident_pairs(all, tol).empty()) fail(ErrorKind::Coincident, "dense quadruple points coincide");
  return q;
}

HingeFrame canonical_frame(const SimplexSpec& spec) {
  if (spec.k() != 4) fail(ErrorKind::InvalidArgument, "frame needs a tetrahedron");
  const auto pts = embed_from_distances(spec);
  return {pts[0].padded(3), pts[1].padded(3), pts[2].padded(3), pts[3].padded(3)};
}

namespace {

std::string relation_for(std::size_t shared) {
  return shared == 3 ? "face" : shared == 2 ? "edge" : "touch";
}

class Builder {
 public:
  Builder(const TetraProfile& prof, const BuildParams& params)
      : prof_(prof), params_(params), dim_(params.ambient_dim), rng_(params.seed),
        roles_{hinge_geometry(prof.spec, 0, 1), hinge_geometry(prof.spec, 2, 3)} {
    if (dim_ < 5) fail(ErrorKind::InvalidArgument, "ambient dimension must be at least 5");
    if (params.corner_steps < 0 || params.link_steps < 0) {
      fail(ErrorKind::InvalidArgument, "step counts must be nonnegative");
    }
  }

  int add_point(const Point& p) {
    if (p.dim() > static_cast<std::size_t>(dim_)) {
      fail(ErrorKind::DimensionMismatch, "point exceeds the ambient dimension");
    }
    return out_.cfg.add(p.padded(dim_));
  }

  const Point& pt(int i) const { return out_.cfg.points[i]; }

  int add_copy(const IndexTuple& t, const std::string& kind) {
    if (!ordered_congruent(out_.cfg.select(t), prof_.spec, tol_)) {
      fail(ErrorKind::InvariantFailure, "built " + kind + " copy is not congruent to the spec");
    }
    out_.tetra_copies.push_back(t);
    ++out_.census[kind];
    return static_cast<int>(out_.tetra_copies.size()) - 1;
  }

  int add_frame(const HingeFrame& f, const std::string& kind) {
    IndexTuple t;
    for (const Point& p : f) t.push_back(add_point(p));
    return add_copy(t, kind);
  }

  void adjacent(int c1, int c2, const std::string& relation = {}) {
    IndexTuple a = out_.tetra_copies[c1], b = out_.tetra_copies[c2];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    IndexTuple shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    const std::string rel = relation.empty() ? relation_for(shared.size()) : relation;
    out_.shared_faces.push_back({c1, c2, rel, shared});
  }

  // Two copies sharing the face opposite role p: (apex1, hinge, r, s) and (apex2, hinge, r, s).
  std::pair<int, int> gadget(int apex1, int hinge, int apex2, int role, const std::string& kind) {
    const HingeGeometry& g = roles_[role];
    const Point P = pt(apex1), Q = pt(hinge), P2 = pt(apex2);
    const double phi = angle_at(P, Q, P2);
    if (phi > 2 * g.theta * (1 + kAngleSlack) || !(phi > 0)) {
      fail(ErrorKind::AngleCondition, "corner angle " + std::to_string(phi) + " exceeds 2theta = " +
                                          std::to_string(2 * g.theta));
    }
    const double A2 = g.height * g.height, B2 = g.hinge_foot * g.hinge_foot;
    const double gp = std::acos(std::clamp((std::cos(phi) * (A2 + B2) - B2) / A2, -1.0, 1.0));
    const Point a = hinge_apex(g, 0), a2 = hinge_apex(g, gp);
    std::vector<Point> canon = gram_schmidt({a, a2, unit_vector(4, 0), unit_vector(4, 1),
                                             unit_vector(4, 2), unit_vector(4, 3)});
    canon.resize(4);
    std::vector<Point> target = gram_schmidt({P - Q, P2 - Q});
    if (target.size() != 2) fail(ErrorKind::Degenerate, "hinge apexes are collinear with the hinge");
    target.push_back(generic_unit(rng_, dim_, target));
    target.push_back(generic_unit(rng_, dim_, target));
    const auto map = [&](const Point& x) {
      Point y = Q;
      for (int i = 0; i < 4; ++i) y += target[i] * dot(x, canon[i]);
      return y;
    };
    const int ir = add_point(map(g.base[g.r]));
    const int is = add_point(map(g.base[g.s]));
    IndexTuple t1(4), t2(4);
    t1[g.p] = apex1;
    t2[g.p] = apex2;
    t1[g.q] = t2[g.q] = hinge;
    t1[g.r] = t2[g.r] = ir;
    t1[g.s] = t2[g.s] = is;
    const int c1 = add_copy(t1, kind);
    const int c2 = add_copy(t2, kind);
    adjacent(c1, c2);
    return {c1, c2};
  }

  // Gadget copies around `center` from `from` to `to`, in order.
  std::vector<int> fan(int center, int from, int to, int role, int steps, const std::string& kind) {
    const HingeGeometry& g = roles_[role];
    const Point u = pt(from) - pt(center), v = pt(to) - pt(center);
    const double len = norm(u);
    if (from == to || tol_.equal(squared_distance(pt(from), pt(to)), 0)) return {};
    const double total = angle_at(pt(from), pt(center), pt(to));
    const int n = steps > 0 ? steps : std::max(1, static_cast<int>(std::ceil(total / g.theta - 1e-9)));
    if (total / n > 2 * g.theta * (1 + kAngleSlack)) {
      fail(ErrorKind::AngleCondition, "corner of " + std::to_string(total) + " rad in " +
                                          std::to_string(n) + " steps exceeds 2theta = " +
                                          std::to_string(2 * g.theta));
    }
    const Point u1 = u * (1 / len);
    Point u2;
    if (total > kPi - 1e-6) {
      u2 = generic_unit(rng_, dim_, {u1});
    } else {
      u2 = v - u1 * dot(v, u1);
      u2 *= 1 / norm(u2);
    }
    std::vector<int> ring{from};
    for (int j = 1; j < n; ++j) {
      const double t = total * j / n;
      ring.push_back(add_point(pt(center) + (u1 * std::cos(t) + u2 * std::sin(t)) * len));
    }
    ring.push_back(to);
    std::vector<int> copies;
    for (std::size_t j = 0; j + 1 < ring.size(); ++j) {
      const auto [c1, c2] = gadget(ring[j], center, ring[j + 1], role, kind);
      copies.push_back(c1);
      copies.push_back(c2);
    }
    return copies;
  }

  // Equilateral path with step len from `from` to `to`, endpoints included.
  std::vector<int> connect(int from, int to, double len) {
    const double dist2 = squared_distance(pt(from), pt(to));
    if (from == to || tol_.equal(dist2, 0)) return {from};
    if (tol_.equal(dist2, len * len)) return {from, to};
    const double dist = std::sqrt(dist2);
    const int t = std::max(2, static_cast<int>(std::floor(dist / len)) + 1);
    const PathConfig path = path_config(t, dist, len);
    const Point e = (pt(to) - pt(from)) * (1 / dist);
    const Point f = generic_unit(rng_, dim_, {e});
    std::vector<int> out{from};
    for (int i = 1; i < t; ++i) {
      out.push_back(add_point(pt(from) + e * path.points[i][0] + f * path.points[i][1]));
    }
    out.push_back(to);
    return out;
  }

  // One path of a link: hinge role q, apex role p, using the copies' own points.
  void link_path(int copy_a, int copy_b, int role, int steps) {
    const HingeGeometry& g = roles_[role];
    const IndexTuple A = out_.tetra_copies[copy_a], B = out_.tetra_copies[copy_b];
    const double len = std::sqrt(prof_.spec.sq_dist[g.p][g.q]);
    std::vector<int> path{A[g.q]};
    for (int i : connect(A[g.p], B[g.p], len)) path.push_back(i);
    path.push_back(B[g.q]);
    int prev = copy_a;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      // fan copies come in face-sharing pairs already recorded by gadget()
      const auto copies = fan(path[i], path[i - 1], path[i + 1], role, steps, "link");
      for (std::size_t j = 0; j < copies.size(); j += 2) {
        adjacent(prev, copies[j]);
        prev = copies[j + 1];
      }
    }
    adjacent(prev, copy_b);
  }

  void link(int copy_a, int copy_b, int k_b, int k_d) {
    link_path(copy_a, copy_b, 0, k_b);
    link_path(copy_a, copy_b, 1, k_d);
    adjacent(copy_a, copy_b, "link");
  }

  // Closed polygon through the seed copy's points in the given role order,
  // fans at every vertex, then links between consecutive copies.
  void x1_pass(int seed, int role, const std::string& kind) {
    const HingeGeometry& g = roles_[role];
    const IndexTuple S = out_.tetra_copies[seed];
    const double len = std::sqrt(prof_.spec.sq_dist[g.p][g.q]);
    std::vector<int> poly{S[g.p]};
    for (const auto& [from, to] : {std::pair{S[g.p], S[g.q]}, std::pair{S[g.q], S[g.r]},
                                   std::pair{S[g.r], S[g.s]}, std::pair{S[g.s], S[g.p]}}) {
      const auto seg = connect(from, to, len);
      poly.insert(poly.end(), seg.begin() + 1, seg.end());
    }
    poly.pop_back();  // closing vertex repeats the first
    const int n = static_cast<int>(poly.size());
    std::vector<int> copies;
    for (int i = 0; i < n; ++i) {
      const auto c = fan(poly[i], poly[(i + n - 1) % n], poly[(i + 1) % n], role,
                         params_.corner_steps, kind);
      copies.insert(copies.end(), c.begin(), c.end());
    }
    for (std::size_t i = 0; i + 1 < copies.size(); ++i) {
      link(copies[i], copies[i + 1], params_.link_steps, params_.link_steps);
    }
  }

  void x1(int seed) {
    x1_pass(seed, 0, "x1_pass1");
    x1_pass(seed, 1, "x1_pass2");
  }

  DensePoints dense(const std::array<int, 3>& x) {
    return dense_on(prof_, {pt(x[0]), pt(x[1]), pt(x[2])}, rng_);
  }

  std::mt19937_64& rng() { return rng_; }
  int dim() const { return dim_; }
  LinkedConfig& out() { return out_; }

  LinkedConfig finish() {
    merge_coincident();
    out_.cfg.copies["tetra"] = out_.tetra_copies;
    long total = 0;
    for (const auto& [k, v] : out_.census) {
      if (k != "total") total += v;
    }
    out_.census["total"] = total;
    out_.cfg.notes.push_back("ambient dimension " + std::to_string(dim_) +
                             "; generic directions drawn with seed " + std::to_string(params_.seed));
    return std::move(out_);
  }

 private:
  void merge_coincident() {
    auto& pts = out_.cfg.points;
    const auto pairs = coincident_pairs(pts, tol_);
    if (pairs.empty()) return;
    std::vector<int> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : pairs) {
      const int ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<int> remap(pts.size(), -1);
    std::vector<Point> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (find(static_cast<int>(i)) == static_cast<int>(i)) {
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(pts[i]);
      }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) remap[i] = remap[find(static_cast<int>(i))];
    out_.merged_points = static_cast<int>(pts.size() - kept.size());
    pts = std::move(kept);
    const auto apply = [&](IndexTuple& t) {
      for (int& i : t) i = remap[i];
    };
    for (auto& t : out_.tetra_copies) {
      apply(t);
      IndexTuple s = t;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        fail(ErrorKind::Coincident, "a tetra copy collapsed when coincident points were merged");
      }
    }
    for (auto& [name, list] : out_.cfg.copies) {
      for (auto& t : list) apply(t);
    }
    for (auto& adj : out_.shared_faces) {
      IndexTuple a = out_.tetra_copies[adj.first], b = out_.tetra_copies[adj.second];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      adj.shared.clear();
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(adj.shared));
      if (adj.relation != "link") adj.relation = relation_for(adj.shared.size());
    }
  }

  const TetraProfile& prof_;
  BuildParams params_;
  int dim_;
  std::mt19937_64 rng_;
  std::array<HingeGeometry, 2> roles_;
  ToleranceConfig tol_;
  LinkedConfig out_;
};

void require_copy(const HingeFrame& f, const SimplexSpec& spec, const std::string& what) {
  std::vector<Point> pts(f.begin(), f.end());
  const std::size_t dim = std::max_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
                            return a.dim() < b.dim();
                          })->dim();
  for (Point& p : pts) p = p.padded(dim);
  if (!ordered_congruent(pts, spec)) {
    fail(ErrorKind::InvalidArgument, what + " is not a congruent copy of the spec in vertex order");
  }
}

}  // namespace

LinkedConfig build_link(const TetraProfile& profile, const HingeFrame& t1, const HingeFrame& t2, int k_b,
                        int k_d, const BuildParams& params) {
  require_copy(t1, profile.spec, "first frame");
  require_copy(t2, profile.spec, "second frame");
  if (k_b < 0 || k_d < 0) fail(ErrorKind::InvalidArgument, "subdivision counts must be nonnegative");
  Builder b(profile, params);
  const int c1 = b.add_frame(t1, "endpoint");
  // identical frames share their points
  int c2;
  bool same = true;
  for (int i = 0; i < 4; ++i) {
    same = same && ToleranceConfig{}.equal(squared_distance(t1[i].padded(params.ambient_dim),
                                                            t2[i].padded(params.ambient_dim)),
                                           0);
  }
  if (same) {
    const IndexTuple shared = b.out().tetra_copies[c1];
    c2 = b.add_copy(shared, "endpoint");
  } else {
    c2 = b.add_frame(t2, "endpoint");
  }
  b.link(c1, c2, k_b, k_d);
  return b.finish();
}

LinkedConfig build_x1(const TetraProfile& profile, const HingeFrame& seed_copy, const BuildParams& params) {
  require_copy(seed_copy, profile.spec, "seed");
  Builder b(profile, params);
  const int seed = b.add_frame(seed_copy, "seed");
  b.x1(seed);
  return b.finish();
}

LinkedConfig build_anchor_gadget(const TetraProfile& profile, std::pair<int, int> edge, int k,
                                 const BuildParams& params) {
  if (!profile.condition) {
    fail(ErrorKind::HypothesisViolated, "H_max = " + std::to_string(profile.H_max) +
                                            " does not exceed rho_min = " + std::to_string(profile.rho_min));
  }
  const auto face = face_without(profile.hmax_apex);
  const auto on_face = [&](int v) { return std::find(face.begin(), face.end(), v) != face.end(); };
  const auto [i1, i2] = edge;
  if (i1 == i2 || !on_face(i1) || !on_face(i2)) {
    fail(ErrorKind::Precondition, "anchor edge must join two vertices of the face supporting H_max");
  }
  if (k < 1) fail(ErrorKind::InvalidArgument, "anchor path needs k >= 1");
  int i3 = -1;
  for (int v : face) {
    if (v != i1 && v != i2) i3 = v;
  }

  Builder b(profile, params);
  const int seed = b.add_frame(canonical_frame(profile.spec), "seed");
  const IndexTuple S = b.out().tetra_copies[seed];
  const Point a1 = b.pt(S[i1]), a2 = b.pt(S[i2]), a3 = b.pt(S[i3]);
  const Point x = a2 + a3 - a1;
  const double step = std::sqrt(squared_distance(a1, x));
  const double span = std::sqrt(squared_distance(a1, a2));
  if (!(span < (k + 1) * step) || (k + 1) < std::ceil(span / step)) {
    fail(ErrorKind::Precondition, "path of " + std::to_string(k + 1) + " edges of length " +
                                      std::to_string(step) + " cannot join a1 and a2");
  }
  const PathConfig path = path_config(k + 1, span, step);
  const Point e = (a2 - a1) * (1 / span);
  const Point f = generic_unit(b.rng(), b.dim(), {e});
  std::vector<int> bs{S[i1]};
  for (int i = 1; i <= k; ++i) bs.push_back(b.add_point(a1 + e * path.points[i][0] + f * path.points[i][1]));
  bs.push_back(S[i2]);

  // parallelogram frame: a1 → origin, x − a1 along the first axis
  const Point ex = (x - a1) * (1 / step);
  const Point side = a2 - a1;
  const double along = dot(side, ex);
  const double across = norm(side - ex * along);

  std::vector<int> anchors;
  auto& cfg = b.out().cfg;
  for (int i = 0; i <= k; ++i) {
    const int bi = bs[i], bj = bs[i + 1];
    const Point E = (b.pt(bj) - b.pt(bi)) * (1 / step);
    const Point F = generic_unit(b.rng(), b.dim(), {E});
    const Point c1p = b.pt(bi) + E * along + F * across;
    const int c1 = b.add_point(c1p);
    const int c2 = b.add_point(b.pt(bi) + b.pt(bj) - c1p);
    cfg.copies["parallelogram"].push_back({bi, c1, bj, c2});

    for (int side_index = 0; side_index < 2; ++side_index) {
      // (b_i, c1, c2) plays (a1, a2, a3); (b_{i+1}, c1, c2) plays (a1, a3, a2)
      std::array<int, 4> pos{};
      pos[i1] = side_index == 0 ? bi : bj;
      pos[i2] = side_index == 0 ? c1 : c2;
      pos[i3] = side_index == 0 ? c2 : c1;
      std::array<int, 3> X{pos[face[0]], pos[face[1]], pos[face[2]]};
      cfg.copies["dense_base"].push_back({X[0], X[1], X[2]});
      const DensePoints dp = b.dense(X);
      const int z = b.add_point(dp.z);
      std::array<int, 3> y{};
      for (int j = 0; j < 3; ++j) y[j] = b.add_point(dp.y[j]);
      const std::string item = side_index == 0 ? "item1" : "item2";
      for (int j = 0; j < 3; ++j) {
        IndexTuple t(4);
        t[profile.hmax_apex] = y[j];
        for (int m = 0; m < 3; ++m) t[face[m]] = X[m];
        anchors.push_back(b.add_copy(t, item));
      }
      const auto rf = face_without(profile.rho_apex);
      IndexTuple t(4);
      t[profile.rho_apex] = z;
      for (int m = 0; m < 3; ++m) t[rf[m]] = y[m];
      anchors.push_back(b.add_copy(t, side_index == 0 ? "item3" : "item4"));
    }
  }
  for (int c : anchors) b.x1(c);
  return b.finish();
}

void verify_linked(const LinkedConfig& lc, const SimplexSpec& spec, const ToleranceConfig& tol) {
  validate(lc.cfg, tol);
  const int n = static_cast<int>(lc.cfg.size());
  for (std::size_t c = 0; c < lc.tetra_copies.size(); ++c) {
    const IndexTuple& t = lc.tetra_copies[c];
    if (t.size() != 4) fail(ErrorKind::InvariantFailure, "tetra copy with wrong arity");
    for (int i : t) {
      if (i < 0 || i >= n) fail(ErrorKind::InvariantFailure, "tetra copy index out of range");
    }
    if (!ordered_congruent(lc.cfg.select(t), spec, tol)) {
      fail(ErrorKind::InvariantFailure, "tetra copy " + std::to_string(c) + " is not congruent to the spec");
    }
  }
  for (const CopyAdjacency& adj : lc.shared_faces) {
    const int m = static_cast<int>(lc.tetra_copies.size());
    if (adj.first < 0 || adj.first >= m || adj.second < 0 || adj.second >= m) {
      fail(ErrorKind::InvariantFailure, "adjacency refers to a missing copy");
    }
    IndexTuple a = lc.tetra_copies[adj.first], b = lc.tetra_copies[adj.second], shared;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    if (shared != adj.shared) fail(ErrorKind::InvariantFailure, "adjacency shared set is stale");
    if (adj.relation == "face" && shared.size() != 3) {
      fail(ErrorKind::InvariantFailure, "declared face adjacency does not share a face");
    }
    if (adj.relation == "edge" && shared.size() != 2) {
      fail(ErrorKind::InvariantFailure, "declared edge adjacency does not share an edge");
    }
  }
}

}  // namespace egr
