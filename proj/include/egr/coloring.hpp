#pragma once

#include <optional>
#include <vector>

#include "egr/geometry.hpp"

namespace egr {

// Every r-coloring of cfg must make some mono target monochromatic or some
// rainbow target rainbow; colors are 0..r-1.
struct ColoringProblem {
  Configuration cfg;
  CopyList mono;
  CopyList rainbow;
  int r = 1;
};

inline constexpr int kMaxColors = 64;

void validate(const ColoringProblem& p);

// Targets filled by enumerating copies of the given specs (either may be absent).
ColoringProblem make_problem(const Configuration& cfg, const std::optional<SimplexSpec>& mono,
                             const std::optional<SimplexSpec>& rainbow, int r,
                             const ToleranceConfig& tol = {});
// S_{3s+1}(a) × B_s(a,b); mono = distance-a pairs, rainbow = (a,b)-rectangles.
ColoringProblem aux1_problem(int s, double a, double b, int r);

enum class Verdict { Forced, Counterexample };
const char* verdict_name(Verdict v);

struct SearchStats {
  long nodes = 0;
  double seconds = 0;
};

struct SearchResult {
  Verdict verdict = Verdict::Forced;
  std::optional<std::vector<int>> witness;
  SearchStats stats;
};

struct SolveOptions {
  double budget_seconds = 300;
};

// Throws Error(Indeterminate) when the budget runs out.
SearchResult solve_gr(const ColoringProblem& p, const SolveOptions& opts = {});

struct ColoringReport {
  CopyList mono_hits;     // monochromatic mono targets
  CopyList rainbow_hits;  // rainbow rainbow targets
  bool clean() const { return mono_hits.empty() && rainbow_hits.empty(); }
};

ColoringReport verify_coloring(const ColoringProblem& p, const std::vector<int>& coloring);

inline constexpr double kOracleCap = 1e7;
SearchResult exhaustive_oracle(const ColoringProblem& p);

// Largest clique in the graph of two-point mono targets.
int mono_clique_bound(const ColoringProblem& p);

struct FivePointScan {
  long violations = 0;   // admissible colorings with χ(M) ≠ χ(P)
  long conforming = 0;   // admissible colorings with χ(M) = χ(P)
  long total = 0;        // r⁵
};

FivePointScan five_point_logic_scan(int r);

}  // namespace egr
