#include "egr/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "egr/error.hpp"

namespace egr {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace

TriangleInvariants triangle_invariants(double a, double b, double c) {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && a > 0,
          ErrorKind::InvalidArgument, "side lengths must be positive and finite");
  require(a <= b && b <= c, ErrorKind::InvalidArgument, "sides must satisfy a <= b <= c");
  require(a + b >= c, ErrorKind::InvalidArgument,
          "triangle inequality violated: " + num(a) + " + " + num(b) + " < " + num(c));
  TriangleInvariants t;
  t.a = a;
  t.b = b;
  t.c = c;
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  t.delta = 2 * a2 * b2 + 2 * b2 * c2 + 2 * c2 * a2 - a2 * a2 - b2 * b2 - c2 * c2;
  require(a + b > c && t.delta > 1e-14 * c2 * c2, ErrorKind::Degenerate,
          "degenerate triangle (" + num(a) + ", " + num(b) + ", " + num(c) + ")");
  t.h = std::sqrt(t.delta) / a;
  t.obtuse = a2 + b2 < c2;
  t.gamma = std::acos(std::clamp((a2 + b2 - c2) / (2 * a * b), -1.0, 1.0));
  t.circumradius = c / (2 * std::sin(t.gamma));
  return t;
}

ChordResult perturbed_chord(double a, double b, double c, double eps) {
  const TriangleInvariants t = triangle_invariants(a, b, c);
  require(t.obtuse, ErrorKind::OutOfDomain, "triangle is not obtuse");
  require(eps > 0 && eps < t.h, ErrorKind::OutOfDomain,
          "eps = " + num(eps) + " outside (0, h) with h = " + num(t.h));
  ChordResult r;
  const double q = eps / 2;
  r.ell = std::sqrt(std::max(0.0, (t.delta - a * a * eps * eps) / (b * b - q * q)));
  r.bound = 2 * std::sqrt(c * c - q * q);
  r.ok = r.ell < r.bound;
  return r;
}

FivePointGadget build_five_point(double a, double b, double c, double eps) {
  const ChordResult ch = perturbed_chord(a, b, c, eps);
  FivePointGadget g;
  g.eps = eps;
  g.ell = ch.ell;
  const double q = eps / 2;
  g.b_prime = std::sqrt(b * b - q * q);
  g.c_prime = std::sqrt(c * c - q * q);
  g.x = (g.b_prime * g.b_prime + g.c_prime * g.c_prime - a * a) / (2 * g.b_prime);
  g.A = Point{0, 0, -q};
  g.B = Point{0, 0, q};
  g.N = Point{g.b_prime, 0, 0};
  g.P = Point{g.x, g.ell / 2, 0};
  g.M = Point{g.x, -g.ell / 2, 0};
  const double res = five_point_residual(g, a, b, c);
  require(res <= 1e-9, ErrorKind::InvariantFailure,
          "five-point gadget misses its distance constraints by " + num(res));
  return g;
}

double five_point_residual(const FivePointGadget& g, double a, double b, double c) {
  struct Item {
    const Point* p;
    const Point* q;
    double len;
  };
  const Item items[] = {
      {&g.A, &g.B, g.eps}, {&g.A, &g.M, c}, {&g.B, &g.M, c}, {&g.A, &g.P, c}, {&g.B, &g.P, c},
      {&g.P, &g.M, g.ell}, {&g.N, &g.A, b}, {&g.N, &g.B, b}, {&g.N, &g.P, a}, {&g.N, &g.M, a},
  };
  double worst = 0;
  for (const auto& it : items) {
    worst = std::max(worst, std::fabs(squared_distance(*it.p, *it.q) - it.len * it.len));
  }
  return worst / (c * c);
}

Configuration to_configuration(const FivePointGadget& g) {
  Configuration cfg;
  const int A = cfg.add(g.A, "A");
  const int B = cfg.add(g.B, "B");
  const int P = cfg.add(g.P, "P");
  const int M = cfg.add(g.M, "M");
  const int N = cfg.add(g.N, "N");
  cfg.copies["triangle"] = {{N, P, A}, {N, P, B}, {N, M, A}, {N, M, B}};
  cfg.copies["tetra"] = {{P, M, A, B}};
  return cfg;
}

double chain_f(int k, double d, double uv, double x) {
  return 2.0 * (k + 1) * std::asin(std::min(1.0, d / (2 * x))) -
         2.0 * std::asin(std::min(1.0, uv / (2 * x)));
}

namespace {

struct CircleSolution {
  int k = 0;
  double s_prime = 0;
  double residual = 0;
};

double level_residual(double f) {
  const double j = std::round(f / (2 * kPi));
  return f - 2 * kPi * j;
}

// Smallest k whose f_k has a 2π level set inside [p, s]; falls back to the
// k from the monotonicity and range bounds, which always has one.
CircleSolution solve_circle(double s, double uv, double d) {
  const double m = std::max(d / 2, uv / 2);
  const double p = m + 0.01 * (s - m);

  long long k_bound = 1;
  {
    const double ratio = (uv / d) * std::sqrt((1 - std::pow(d / (2 * p), 2)) /
                                              (1 - std::pow(uv / (2 * p), 2)));
    k_bound = std::max<long long>(1, static_cast<long long>(std::floor(ratio)));
    while (!(static_cast<double>(k_bound + 1) > ratio)) ++k_bound;
    while (chain_f(static_cast<int>(k_bound), d, uv, p) - chain_f(static_cast<int>(k_bound), d, uv, s) <=
           2 * kPi) {
      ++k_bound;
      require(k_bound < 50'000'000, ErrorKind::CapExceeded, "chain hop count too large");
    }
  }

  auto bisect = [&](int k, double lo, double hi, double level) {
    // g(lo) and g(hi) have opposite signs (or one is zero)
    auto g = [&](double x) { return chain_f(k, d, uv, x) - level; };
    double glo = g(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (std::fabs(gm) < 1e-13 || hi - lo < 1e-16 * s) return mid;
      if ((gm < 0) == (glo < 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  auto try_k = [&](int k, int samples, CircleSolution& out) {
    const double fs = chain_f(k, d, uv, s);
    if (std::fabs(level_residual(fs)) < 1e-12) {
      out = {k, s, level_residual(fs)};
      return true;
    }
    double prev_x = s;
    double prev_f = fs;
    for (int i = 1; i <= samples; ++i) {
      const double x = s - (s - p) * static_cast<double>(i) / samples;
      const double fx = chain_f(k, d, uv, x);
      const double lo_f = std::min(prev_f, fx), hi_f = std::max(prev_f, fx);
      const double j = std::ceil(lo_f / (2 * kPi));
      if (2 * kPi * j <= hi_f) {
        const double level = 2 * kPi * j;
        const double sp = bisect(k, x, prev_x, level);
        out = {k, sp, chain_f(k, d, uv, sp) - level};
        return true;
      }
      prev_x = x;
      prev_f = fx;
    }
    return false;
  };

  CircleSolution sol;
  const long long scan_limit = std::min<long long>(k_bound - 1, 64);
  for (int k = 1; k <= scan_limit; ++k) {
    if (try_k(k, 256, sol)) return sol;
  }
  require(k_bound < 2'000'000'000LL, ErrorKind::CapExceeded, "chain hop count too large");
  if (try_k(static_cast<int>(k_bound), 4096, sol)) return sol;
  fail(ErrorKind::InvariantFailure, "no 2π level set found for the chain circle");
}

SphereChain chain_in_span(const Point& center, double s, const Point& u, const Point& v, double d,
                          const std::vector<Point>& dirs) {
  const double uv2 = squared_distance(u, v);
  const double uv = std::sqrt(uv2);
  const Point mid = (u + v) * 0.5;
  const Point e1 = (v - u) * (1.0 / uv);
  const Point w_raw = mid - center;
  const double mlen = norm(w_raw);
  const Point w = w_raw * (1.0 / mlen);

  const CircleSolution sol = solve_circle(s, uv, d);
  const double sp = sol.s_prime;
  const double off = std::sqrt(std::max(0.0, s * s - sp * sp));

  // The circle of radius s' through U and V lies in a plane at distance off
  // from the center; tilt from the great circle toward a third direction.
  Point normal = orthogonal_unit({e1, w}, dirs);
  const double cb = std::clamp(off / mlen, -1.0, 1.0);
  const double sb = std::sqrt(std::max(0.0, 1 - cb * cb));
  const Point nvec = w * cb + normal * sb;
  const Point oc = center + nvec * off;
  const Point u1 = (u - oc) * (1.0 / sp);
  Point u2 = e1 - u1 * dot(e1, u1);
  u2 *= 1.0 / norm(u2);

  SphereChain ch;
  ch.center = center;
  ch.radius = s;
  ch.step = d;
  ch.k = sol.k;
  ch.s_prime = sp;
  ch.f_residual = sol.residual;
  ch.nodes.push_back(u);
  const double alpha = 2 * std::asin(d / (2 * sp));
  for (int i = 1; i <= sol.k; ++i) {
    ch.nodes.push_back(oc + u1 * (sp * std::cos(i * alpha)) + u2 * (sp * std::sin(i * alpha)));
  }
  ch.nodes.push_back(v);
  return ch;
}

void check_chain(const SphereChain& ch) {
  const ToleranceConfig tol{1e-9, 1e-12};
  const double s2 = ch.radius * ch.radius;
  const double d2 = ch.step * ch.step;
  for (std::size_t i = 0; i < ch.nodes.size(); ++i) {
    require(tol.equal(squared_distance(ch.nodes[i], ch.center), s2), ErrorKind::InvariantFailure,
            "chain node " + std::to_string(i) + " is off the sphere");
    if (i + 1 < ch.nodes.size()) {
      require(tol.equal(squared_distance(ch.nodes[i], ch.nodes[i + 1]), d2),
              ErrorKind::InvariantFailure, "chain hop " + std::to_string(i) + " has wrong length");
    }
  }
}

}  // namespace

SphereChain chain_on_sphere(const Point& center, double s, const Point& u, const Point& v,
                            double d) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < center.dim(); ++i) dirs.push_back(unit_vector(center.dim(), i));
  return chain_on_sphere(center, s, u, v, d, dirs);
}

SphereChain chain_on_sphere(const Point& center, double s, const Point& u, const Point& v, double d,
                            const std::vector<Point>& directions) {
  require(center.dim() == u.dim() && u.dim() == v.dim(), ErrorKind::DimensionMismatch,
          "chain points must share a dimension");
  require(directions.size() >= 3, ErrorKind::InvalidArgument,
          "the sphere must live in at least three dimensions");
  for (const auto& e : directions) {
    require(e.dim() == center.dim(), ErrorKind::DimensionMismatch, "direction dimension");
  }
  require(s > 0 && std::isfinite(s), ErrorKind::InvalidArgument, "radius must be positive");
  require(d > 0 && d < 2 * s, ErrorKind::OutOfDomain,
          "step d = " + num(d) + " must lie in (0, 2s) with s = " + num(s));
  const ToleranceConfig tol;
  const double s2 = s * s;
  auto on_sphere = [&](const Point& p) {
    if (!tol.equal(squared_distance(p, center), s2)) return false;
    Point r = p - center;
    for (const auto& e : directions) r -= e * dot(r, e);
    return dot(r, r) <= 1e-18 * s2 + 1e-24;
  };
  require(on_sphere(u), ErrorKind::OutOfDomain, "U is off the sphere");
  require(on_sphere(v), ErrorKind::OutOfDomain, "V is off the sphere");

  const double uv2 = squared_distance(u, v);
  if (tol.equal(uv2, 0.0)) {
    SphereChain ch;
    ch.center = center;
    ch.radius = s;
    ch.step = d;
    ch.s_prime = s;
    ch.nodes = {u};
    return ch;
  }
  if (tol.equal(uv2, d * d)) {
    SphereChain ch;
    ch.center = center;
    ch.radius = s;
    ch.step = d;
    ch.s_prime = s;
    ch.nodes = {u, v};
    check_chain(ch);
    return ch;
  }

  SphereChain ch;
  if (uv2 >= 4 * s2 * (1 - 1e-9)) {
    // Antipodal pair: hop once along any great circle through U first.
    const Point r = (u - center) * (1.0 / s);
    const Point t = orthogonal_unit({r}, directions);
    const double alpha = 2 * std::asin(d / (2 * s));
    const Point u_pre = center + r * (s * std::cos(alpha)) + t * (s * std::sin(alpha));
    if (tol.equal(squared_distance(u_pre, v), d * d)) {
      ch.center = center;
      ch.radius = s;
      ch.step = d;
      ch.s_prime = s;
      ch.nodes = {u_pre, v};
    } else {
      ch = chain_in_span(center, s, u_pre, v, d, directions);
    }
    ch.nodes.insert(ch.nodes.begin(), u);
    ch.prehop = true;
  } else {
    ch = chain_in_span(center, s, u, v, d, directions);
  }
  check_chain(ch);
  return ch;
}

Configuration to_configuration(const SphereChain& chain) {
  Configuration cfg;
  cfg.add(chain.center, "O");
  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    std::string label;
    if (i == 0) {
      label = "U";
    } else if (i + 1 == chain.nodes.size()) {
      label = "V";
    } else {
      label = "X" + std::to_string(i);
    }
    cfg.add(chain.nodes[i], label);
  }
  CopyList hops;
  for (std::size_t i = 1; i < chain.nodes.size(); ++i) {
    hops.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
  }
  cfg.copies["hop"] = hops;
  return cfg;
}

SphereAnchors sphere_anchors(double c, double eps) {
  SphereAnchors s;
  s.A = Point{0, 0, 0, -eps / 2};
  s.B = Point{0, 0, 0, eps / 2};
  s.radius = std::sqrt(c * c - eps * eps / 4);
  return s;
}

SphereChain mono_sphere_witness(double a, double b, double c, double eps, const Point& u,
                                const Point& v) {
  const FivePointGadget g = build_five_point(a, b, c, eps);
  const SphereAnchors anchors = sphere_anchors(c, eps);
  require(u.dim() == 4 && v.dim() == 4, ErrorKind::DimensionMismatch,
          "sphere witness points live in E^4");
  const ToleranceConfig tol;
  for (const Point* p : {&u, &v}) {
    require(tol.equal(squared_distance(*p, anchors.A), c * c) &&
                tol.equal(squared_distance(*p, anchors.B), c * c),
            ErrorKind::OutOfDomain, "point is not at distance c from both A and B");
  }
  const Point origin(4);
  const std::vector<Point> dirs = {unit_vector(4, 0), unit_vector(4, 1), unit_vector(4, 2)};
  // Remove the tiny off-hyperplane component so the restricted sphere check is exact.
  Point uu = u, vv = v;
  uu[3] = 0;
  vv[3] = 0;
  SphereChain ch = chain_on_sphere(origin, anchors.radius, uu, vv, g.ell, dirs);
  ch.nodes.front() = u;
  ch.nodes.back() = v;

  const SimplexSpec pmab = SimplexSpec::from_points({g.P, g.M, g.A, g.B});
  for (std::size_t i = 0; i + 1 < ch.nodes.size(); ++i) {
    const std::vector<Point> hop = {ch.nodes[i], ch.nodes[i + 1], anchors.A, anchors.B};
    require(congruence_check(SimplexSpec::from_points(hop), pmab).has_value(),
            ErrorKind::InvariantFailure,
            "hop " + std::to_string(i) + " with A, B is not congruent to PMAB");
  }
  return ch;
}

CaseBCertificate case_b_certificate(double a, double b, double c, double eps, double rho,
                                    double delta) {
  const TriangleInvariants t = triangle_invariants(a, b, c);
  auto violated = [](const std::string& name, const std::string& detail) {
    fail(ErrorKind::Precondition, "inequality '" + name + "' violated: " + detail);
  };
  if (t.gamma < 5 * kPi / 6 - 1e-12) violated("gamma_regime", "largest angle below 5π/6");
  if (!(eps > 0)) violated("eps_positive", "eps must be positive");
  if (!(eps < c / 2)) violated("eps_below_half_c", "eps = " + num(eps) + " >= c/2 = " + num(c / 2));
  if (!(eps < t.h)) violated("eps_below_h", "eps = " + num(eps) + " >= h = " + num(t.h));

  CaseBCertificate cert;
  cert.rho = rho;
  cert.delta = delta;
  cert.rad_S = std::sqrt(c * c - eps * eps / 4);
  const double shell = std::sqrt(3 * c * c / 4 - eps * eps / 4);

  // W: circumsphere radius |OZ| for the apex Z of a copy of T standing on a
  // chord CD of S with |CD| = c, on the far side of CD from O.
  {
    const double dist_cd = std::sqrt(cert.rad_S * cert.rad_S - c * c / 4);
    const double xz = -c / 2 + (c * c + a * a - b * b) / (2 * c);
    const double hz = std::sqrt(t.delta) / (2 * c);
    cert.rad_W = std::hypot(xz, dist_cd + hz);
  }

  const ToleranceConfig tol;
  if (rho > cert.rad_S && !tol.equal(rho * rho, cert.rad_S * cert.rad_S)) {
    violated("rho_upper", "rho = " + num(rho) + " exceeds rad(S) = " + num(cert.rad_S));
  }
  if (!(rho > shell)) violated("rho_lower", "rho = " + num(rho) + " <= " + num(shell));
  if (rho < cert.rad_W) {
    violated("rho_vs_rad_W", "rho = " + num(rho) + " < rad(W) = " + num(cert.rad_W));
  }
  if (!(delta > 0)) violated("delta_positive", "delta must be positive");
  const double d1 = (c * c - rho * rho) / (2 * rho);
  if (!(delta < d1)) violated("delta1", "delta = " + num(delta) + " >= " + num(d1));
  cert.branch = tol.equal(rho * rho, cert.rad_S * cert.rad_S) ? 1 : 2;
  if (cert.branch == 2) {
    const double d2 = (cert.rad_S * cert.rad_S - rho * rho) / (2 * rho);
    if (!(delta < d2)) violated("delta2", "delta = " + num(delta) + " >= " + num(d2));
  }
  const double d3 = t.h * t.h / (2 * rho);
  if (!(delta < d3)) violated("delta3", "delta = " + num(delta) + " >= " + num(d3));
  const double lhs = (eps / 2) * (eps / 2) / std::sqrt(c * c - rho * delta);
  if (!(lhs <= rho - delta)) {
    violated("final", num(lhs) + " > rho - delta = " + num(rho - delta));
  }

  // Q at distance rho - delta/2 from O, P with QP perpendicular to OQ.
  cert.oq = rho - delta / 2;
  if (cert.branch == 1) {
    cert.pq = std::sqrt(std::max(0.0, cert.rad_S * cert.rad_S - cert.oq * cert.oq));
  } else {
    cert.pq = std::sqrt(2 * rho * delta);
  }
  cert.O = Point{0, 0, 0};
  cert.Q = Point{cert.oq, 0, 0};
  cert.P = Point{cert.oq, cert.pq, 0};
  cert.K = Point{cert.oq, cert.pq / 2, 0};

  // Intersections inside the bisector plane y = |PQ|/2; O projects to O'.
  const double half = cert.pq / 2;
  const double rk = std::sqrt(c * c - half * half);
  auto intersect = [&](double radius, const std::string& name) {
    const double r1 = std::sqrt(radius * radius - half * half);
    const double dd = cert.oq;
    const double x = (dd * dd + r1 * r1 - rk * rk) / (2 * dd);
    const double z2 = r1 * r1 - x * x;
    if (z2 < -1e-12 * r1 * r1) violated(name, "circles do not meet in the bisector plane");
    return Point{x, half, std::sqrt(std::max(0.0, z2))};
  };
  cert.Z1 = intersect(cert.rad_S, "intersection_S");
  cert.Z2 = intersect(cert.rad_W, "intersection_W");

  const double c2 = c * c;
  const ToleranceConfig check{1e-9, 1e-12};
  const bool ok = check.equal(squared_distance(cert.Z1, cert.P), c2) &&
                  check.equal(squared_distance(cert.Z1, cert.Q), c2) &&
                  check.equal(squared_distance(cert.Z2, cert.P), c2) &&
                  check.equal(squared_distance(cert.Z2, cert.Q), c2) &&
                  check.equal(squared_distance(cert.Z1, cert.O), cert.rad_S * cert.rad_S) &&
                  check.equal(squared_distance(cert.Z2, cert.O), cert.rad_W * cert.rad_W);
  require(ok, ErrorKind::InvariantFailure, "certificate distances do not close");
  require(cert.pq <= std::sqrt(2 * rho * delta) * (1 + 1e-12), ErrorKind::InvariantFailure,
          "|PQ| exceeds sqrt(2 rho delta)");
  require(cert.oq >= rho - delta && cert.oq <= rho, ErrorKind::InvariantFailure,
          "|OQ| outside [rho - delta, rho]");
  require(cert.rad_W > shell, ErrorKind::InvariantFailure, "rad(W) not above the shell radius");
  return cert;
}

Configuration to_configuration(const CaseBCertificate& cert) {
  Configuration cfg;
  const int o = cfg.add(cert.O, "O");
  const int p = cfg.add(cert.P, "P");
  const int q = cfg.add(cert.Q, "Q");
  const int k = cfg.add(cert.K, "K");
  const int z1 = cfg.add(cert.Z1, "Z1");
  const int z2 = cfg.add(cert.Z2, "Z2");
  cfg.copies["isosceles"] = {{z1, p, q}, {z2, p, q}};
  cfg.copies["radius"] = {{o, q}, {o, z1}, {o, z2}};
  cfg.copies["midpoint"] = {{p, k, q}};
  cfg.notes.push_back("branch " + std::to_string(cert.branch));
  return cfg;
}

}  // namespace egr
