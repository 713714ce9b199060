#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace egr {

using Palette = std::set<int>;
using Quad = std::array<Palette, 4>;

struct SdrResult {
  std::optional<std::vector<int>> representatives;  // one color per palette, all distinct
  std::vector<int> hall_violator;                   // palette indices whose union is too small
};

SdrResult has_sdr(const std::vector<Palette>& palettes);
// |union of the listed palettes| < number of listed palettes
bool violates_hall(const std::vector<Palette>& palettes, const std::vector<int>& subset);

enum class QuadKind { Rainbow, Mono, TypeA, TypeB };
const char* quad_kind_name(QuadKind kind);

// Position j of the normal form holds palette order[j]; colors are renamed by
// the injective map `colors` (normal-form colors start at 1).
struct Relabeling {
  std::array<int, 4> order{0, 1, 2, 3};
  std::map<int, int> colors;
};

struct QuadClass {
  QuadKind kind = QuadKind::Rainbow;
  std::optional<Relabeling> relabeling;  // TYPE_A and TYPE_B
  std::optional<int> common_color;       // MONO
  std::vector<int> representatives;      // RAINBOW
};

QuadClass classify_quadruple(const Quad& quad);
Quad apply_relabeling(const Quad& quad, const Relabeling& rel);
// True iff the classification's evidence checks out against the quadruple.
bool replays(const Quad& quad, const QuadClass& cls);

struct ClassificationScan {
  long quadruples = 0;      // all quadruples of subsets of [r] of size >= 2
  long obstructed = 0;      // no common color and no SDR
  long type_a = 0;
  long type_b = 0;
  long unclassifiable = 0;  // obstructed but neither form replays
};

inline constexpr int kClassificationCap = 5;
ClassificationScan classification_scan(int r);

// Face: the quadruples share the face opposite `apex`, vertex i of quad
// sitting on vertex to[i] of quad_prime. Link: the quadruples are the ends of
// a link, vertex i corresponding to to[i]; the pairs (0,1) and (2,3) carry the
// link's two paths.
struct Sharing {
  enum class Mode { Face, Link } mode = Mode::Face;
  std::array<int, 4> to{0, 1, 2, 3};
  int apex = 0;
};

struct RuleViolation {
  std::string rule;  // "shared_palette", "disjointness", "same_type", "type_recovery"
  std::string detail;
};

std::vector<RuleViolation> propagate_disjointness(const Quad& quad, const Quad& quad_prime,
                                                  const Sharing& sharing);

}  // namespace egr
