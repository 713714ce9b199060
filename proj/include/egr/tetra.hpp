#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

// Two copies sharing the face opposite vertex p rotate about it; the hinge
// vertex q carries the aperture. Base face in the z = w = 0 plane of E⁴:
// q at the origin, then r, s (the remaining vertices in increasing order).
struct HingeGeometry {
  int p = 0, q = 1, r = 2, s = 3;
  std::array<Point, 4> base;  // positions of vertices by spec index, apex omitted (empty)
  Point foot;                 // projection h of the apex onto the base plane
  double height = 0;          // |apex − h|
  double hinge_foot = 0;      // |q − h|
  double theta = 0;           // angle between q→p and the base plane
};

HingeGeometry hinge_geometry(const SimplexSpec& spec, int p, int q);
// (h₁, h₂, d cos γ, d sin γ)
Point hinge_apex(const HingeGeometry& g, double gamma);

struct TetraProfile {
  SimplexSpec spec;
  std::array<double, 4> heights{};      // height over the face opposite vertex i
  std::array<double, 4> circumradii{};  // circumradius of the face opposite vertex i
  double H_max = 0;
  double rho_min = 0;
  int hmax_apex = 0;  // vertex opposite the face supporting H_max
  int rho_apex = 0;   // vertex opposite the face of circumradius rho_min
  bool condition = false;  // H_max > rho_min
  HingeGeometry hinge;     // apex 0, hinge 1
  double theta = 0;
  double cos_2theta = 0;
  Point apex_foot;
  double apex_height = 0;
};

TetraProfile tetra_profile(const SimplexSpec& spec, const ToleranceConfig& tol = {});

// Apex of the hinge-frame copy at parameter γ; vertices 1..3 are profile.hinge.base.
Point apex_circle(const TetraProfile& profile, double gamma);

struct HingePair {
  Point a, b, c, d, a_prime;  // abcd and a'bcd in spec order
  double phi = 0;             // realized ∠a b a′
  double gamma = 0, gamma_prime = 0;
};

HingePair glue_two_copies(const TetraProfile& profile, double phi);
// Angle at the middle point, in radians.
double angle_at(const Point& a, const Point& b, const Point& c);

struct DenseQuadruple {
  Point z;
  std::array<Point, 3> y, x;
  // Spec-order tuples into the list z, y1, y2, y3, x1, x2, x3 (indices 0..6):
  // first the z-copy, then the three y_i-copies.
  std::array<IndexTuple, 4> copies;
};

DenseQuadruple dense_quadruple(const TetraProfile& profile, std::uint64_t seed = 0);

using HingeFrame = std::array<Point, 4>;  // a placed copy in spec order

struct CopyAdjacency {
  int first = 0, second = 0;  // positions in tetra_copies
  std::string relation;       // "face", "edge" or "link"
  IndexTuple shared;          // common point indices, sorted
};

struct LinkedConfig {
  Configuration cfg;          // cfg.copies["tetra"] mirrors tetra_copies
  CopyList tetra_copies;      // spec order
  std::vector<CopyAdjacency> shared_faces;
  std::map<std::string, long> census;
  int merged_points = 0;      // coincident points identified after the build
};

struct BuildParams {
  int ambient_dim = 6;   // at least 5
  std::uint64_t seed = 0;
  int corner_steps = 0;  // angular steps per polygon corner, 0 = ceil(corner/θ)
  int link_steps = 0;    // same for the corners inside links
};

// k_b, k_d: angular steps per corner on the b- and d-paths, 0 = automatic.
LinkedConfig build_link(const TetraProfile& profile, const HingeFrame& t1, const HingeFrame& t2,
                        int k_b = 0, int k_d = 0, const BuildParams& params = {});
LinkedConfig build_x1(const TetraProfile& profile, const HingeFrame& seed_copy,
                      const BuildParams& params = {});
// edge: two spec indices on the face supporting H_max; k + 1 path edges.
LinkedConfig build_anchor_gadget(const TetraProfile& profile, std::pair<int, int> edge, int k,
                                 const BuildParams& params = {});

// Placed copy of the spec with vertex 0 at the origin (triangular frame).
HingeFrame canonical_frame(const SimplexSpec& spec);

// Every tetra copy congruent in order, adjacency sets consistent. Throws.
void verify_linked(const LinkedConfig& lc, const SimplexSpec& spec, const ToleranceConfig& tol = {});

}  // namespace egr
