#pragma once

#include <string>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

struct TriangleInvariants {
  double a = 0, b = 0, c = 0;
  double delta = 0;  // 2a²b² + 2b²c² + 2c²a² − a⁴ − b⁴ − c⁴ (sixteen times the squared area)
  double h = 0;      // sqrt(delta) / a
  bool obtuse = false;
  double gamma = 0;  // angle opposite c, radians
  double circumradius = 0;
};

// Requires a <= b <= c.
TriangleInvariants triangle_invariants(double a, double b, double c);

struct ChordResult {
  double ell = 0;
  double bound = 0;
  bool ok = false;
};

// Chord length of the perturbed five-point gadget and the sphere diameter it
// must stay below. Requires an obtuse triangle and 0 < eps < h.
ChordResult perturbed_chord(double a, double b, double c, double eps);

struct FivePointGadget {
  Point A, B, P, M, N;  // E³, AB along the third axis, K at the origin
  double eps = 0;
  double ell = 0;
  double b_prime = 0;
  double c_prime = 0;
  double x = 0;  // |KK'|, also the first coordinate of P and M
};

FivePointGadget build_five_point(double a, double b, double c, double eps);
// Largest |d² − target²| over the seven distance constraints, divided by c².
double five_point_residual(const FivePointGadget& g, double a, double b, double c);
// Points A,B,P,M,N; copies "triangle" (NPA, NPB, NMA, NMB) and "tetra" (PMAB).
Configuration to_configuration(const FivePointGadget& g);

struct SphereChain {
  Point center;
  double radius = 0;
  double step = 0;
  std::vector<Point> nodes;  // U, X1..Xk, V (U alone when U = V)
  int k = 0;
  double s_prime = 0;
  bool prehop = false;        // antipodal input: nodes[1] is the inserted U'
  double f_residual = 0;      // f(s') minus the nearest multiple of 2π
};

// f(x) = 2(k+1)·asin(d/2x) − 2·asin(uv/2x)
double chain_f(int k, double d, double uv, double x);

// Sphere of radius s about center inside the whole ambient space.
SphereChain chain_on_sphere(const Point& center, double s, const Point& u, const Point& v,
                            double d);
// Sphere restricted to center + span(directions); directions must be
// orthonormal and span at least three dimensions.
SphereChain chain_on_sphere(const Point& center, double s, const Point& u, const Point& v,
                            double d, const std::vector<Point>& directions);

Configuration to_configuration(const SphereChain& chain);

// The sphere {Z : |ZA| = |ZB| = c} in E⁴ with A = (0,0,0,−ε/2), B = (0,0,0,ε/2).
struct SphereAnchors {
  Point A, B;
  double radius = 0;
};
SphereAnchors sphere_anchors(double c, double eps);

// Chain with step ℓ(ε) on that sphere; every hop together with A and B is
// checked against the PMAB tetrahedron of the five-point gadget.
SphereChain mono_sphere_witness(double a, double b, double c, double eps, const Point& u,
                                const Point& v);

struct CaseBCertificate {
  double rho = 0, delta = 0;
  Point P, Q, Z1, Z2, O, K;
  double rad_S = 0, rad_W = 0;
  int branch = 0;     // 1: rho equals rad_S, 2: rho below rad_S
  double oq = 0;      // |OQ|
  double pq = 0;      // |PQ|
};

CaseBCertificate case_b_certificate(double a, double b, double c, double eps, double rho,
                                    double delta);
Configuration to_configuration(const CaseBCertificate& cert);

}  // namespace egr
