#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "egr/coloring.hpp"
#include "egr/error.hpp"
#include "egr/palette.hpp"
#include "egr/tetra.hpp"

using namespace egr;

namespace {

bool oracle_mono(const Quad& q) {
  for (int c : q[0]) {
    if (q[1].count(c) && q[2].count(c) && q[3].count(c)) return true;
  }
  return false;
}

bool oracle_sdr(const Quad& q) {
  for (int a : q[0]) {
    for (int b : q[1]) {
      for (int c : q[2]) {
        for (int d : q[3]) {
          if (std::set<int>{a, b, c, d}.size() == 4) return true;
        }
      }
    }
  }
  return false;
}

// Every palette order and every permutation of the colors 1..n, checked
// against the normal form literally.
std::optional<QuadKind> oracle_form(const Quad& q, int n) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::vector<int> perm(n);
  std::optional<QuadKind> found;
  do {
    std::iota(perm.begin(), perm.end(), 1);
    do {
      Quad m;
      for (int j = 0; j < 4; ++j) {
        for (int c : q[order[j]]) m[j].insert(perm[c - 1]);
      }
      const bool a = m[0] == Palette{1, 2} && m[1] == Palette{2, 3} && m[2] == Palette{1, 3} &&
                     std::all_of(m[3].begin(), m[3].end(), [](int c) { return c <= 3; });
      const bool b = m[0] == Palette{1, 2} && m[1] == m[0] && m[2] == m[0] && m[3].count(3) && m[3].count(4);
      if (a) found = QuadKind::TypeA;
      if (b) found = QuadKind::TypeB;
      if (found) return found;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (std::next_permutation(order.begin(), order.end()));
  return found;
}

Palette random_palette(std::mt19937_64& rng, int r) {
  Palette p;
  const int size = std::uniform_int_distribution<int>(2, r)(rng);
  std::vector<int> colors(r);
  std::iota(colors.begin(), colors.end(), 1);
  std::shuffle(colors.begin(), colors.end(), rng);
  p.insert(colors.begin(), colors.begin() + size);
  return p;
}

// Every vertex of the linked configuration is blown up into two points that
// must differ in color, so each palette has at least two colors; every choice
// of one point per vertex of a tetra copy is a target.
ColoringProblem blow_up(const LinkedConfig& lc, int r) {
  ColoringProblem p;
  p.r = r;
  p.cfg.allow_coincident = true;
  for (const Point& q : lc.cfg.points) {
    const int first = p.cfg.add(q);
    const int second = p.cfg.add(q);
    p.mono.push_back({first, second});
  }
  for (const IndexTuple& t : lc.tetra_copies) {
    for (int mask = 0; mask < 16; ++mask) {
      IndexTuple choice;
      for (int i = 0; i < 4; ++i) choice.push_back(2 * t[i] + ((mask >> i) & 1));
      p.mono.push_back(choice);
      p.rainbow.push_back(choice);
    }
  }
  return p;
}

Quad palettes_of(const IndexTuple& copy, const std::vector<int>& coloring) {
  Quad q;
  for (int i = 0; i < 4; ++i) q[i] = {coloring[2 * copy[i]], coloring[2 * copy[i] + 1]};
  return q;
}

}  // namespace

TEST_CASE("has_sdr examples") {
  const auto ok = has_sdr({{1, 2}, {2, 3}, {1, 3}});
  REQUIRE(ok.representatives);
  CHECK(std::set<int>(ok.representatives->begin(), ok.representatives->end()).size() == 3);
  CHECK(ok.hall_violator.empty());

  const std::vector<Palette> bad{{1, 2}, {1, 2}, {1, 2}, {3, 4}};
  const auto none = has_sdr(bad);
  CHECK_FALSE(none.representatives);
  CHECK(none.hall_violator == std::vector<int>{0, 1, 2});
  CHECK(violates_hall(bad, none.hall_violator));

  const auto ones = has_sdr({{1}, {1}});
  CHECK_FALSE(ones.representatives);
  CHECK(ones.hall_violator == std::vector<int>{0, 1});
  CHECK(has_sdr({}).representatives);
}

TEST_CASE("has_sdr agrees with brute force and ships verifying violators") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int r = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<Palette> ps(4);
    for (Palette& p : ps) {
      for (int c = 1; c <= r; ++c) {
        if (rng() % 3 == 0) p.insert(c);
      }
    }
    const auto res = has_sdr(ps);
    const bool brute = [&] {
      for (Palette& p : ps) {
        if (p.empty()) return false;
      }
      return oracle_sdr({ps[0], ps[1], ps[2], ps[3]});
    }();
    REQUIRE(res.representatives.has_value() == brute);
    if (res.representatives) {
      for (int i = 0; i < 4; ++i) CHECK(ps[i].count((*res.representatives)[i]));
    } else {
      CHECK(violates_hall(ps, res.hall_violator));
    }
  }
}

TEST_CASE("classify_quadruple examples") {
  const Quad a{Palette{1, 2}, {2, 3}, {1, 3}, {1, 2}};
  const auto ca = classify_quadruple(a);
  CHECK(ca.kind == QuadKind::TypeA);
  CHECK(replays(a, ca));

  const Quad b{Palette{1, 2}, {1, 2}, {1, 2}, {3, 4}};
  const auto cb = classify_quadruple(b);
  CHECK(cb.kind == QuadKind::TypeB);
  CHECK(replays(b, cb));
  CHECK(apply_relabeling(b, *cb.relabeling) == b);

  const Quad rb{Palette{1, 2}, {2, 3}, {3, 4}, {4, 1}};
  const auto cr = classify_quadruple(rb);
  CHECK(cr.kind == QuadKind::Rainbow);
  CHECK(replays(rb, cr));

  const Quad m{Palette{1, 2}, {1, 2}, {1, 3}, {1, 4}};
  const auto cm = classify_quadruple(m);
  CHECK(cm.kind == QuadKind::Mono);
  CHECK(cm.common_color == 1);
  CHECK(replays(m, cm));

  // a relabeled type B: colors and positions scrambled
  const Quad b2{Palette{5, 7, 9}, {2, 4}, {2, 4}, {2, 4}};
  const auto cb2 = classify_quadruple(b2);
  CHECK(cb2.kind == QuadKind::TypeB);
  CHECK(replays(b2, cb2));
  CHECK(cb2.relabeling->order[3] == 0);

  CHECK_THROWS_AS(classify_quadruple({Palette{1}, {1, 2}, {2, 3}, {1, 3}}), Error);
}

TEST_CASE("classify_quadruple matches a brute-force oracle") {
  std::mt19937_64 rng(9);
  int typed = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int r = std::uniform_int_distribution<int>(3, 5)(rng);
    const Quad q{random_palette(rng, r), random_palette(rng, r), random_palette(rng, r), random_palette(rng, r)};
    const auto cls = classify_quadruple(q);
    REQUIRE(replays(q, cls));
    if (oracle_mono(q)) {
      CHECK(cls.kind == QuadKind::Mono);
    } else if (oracle_sdr(q)) {
      CHECK(cls.kind == QuadKind::Rainbow);
    } else {
      const auto kind = oracle_form(q, std::max(r, 4));
      REQUIRE(kind);
      CHECK(cls.kind == *kind);
      ++typed;
    }
  }
  CHECK(typed > 10);
}

TEST_CASE("classification_scan leaves nothing unclassified") {
  for (int r : {3, 4}) {
    const auto scan = classification_scan(r);
    CHECK(scan.unclassifiable == 0);
    CHECK(scan.obstructed == scan.type_a + scan.type_b);
    CHECK(scan.type_a > 0);
  }
  CHECK(classification_scan(3).type_b == 0);
  CHECK(classification_scan(4).type_b > 0);
  CHECK(classification_scan(3).quadruples == 4 * 4 * 4 * 4);
  CHECK_THROWS_AS(classification_scan(6), Error);
}

TEST_CASE("propagate_disjointness examples") {
  // type B pair sharing the face {1,2,3}; both apex palettes disjoint from the face
  const Quad b{Palette{3, 4}, {1, 2}, {1, 2}, {1, 2}};
  const Quad b2{Palette{3, 5}, {1, 2}, {1, 2}, {1, 2}};
  CHECK(propagate_disjointness(b, b2, Sharing{}).empty());
  CHECK(propagate_disjointness(b, b, Sharing{}).empty());
  const Quad a{Palette{1, 2}, {2, 3}, {1, 3}, {1, 2}};
  CHECK(propagate_disjointness(a, a, Sharing{Sharing::Mode::Link}).empty());

  const Quad typed_a{Palette{1, 2}, {1, 2}, {2, 3}, {1, 3}};
  const Quad typed_b{Palette{1, 2}, {1, 2}, {1, 2}, {3, 4}};
  const auto rep = propagate_disjointness(typed_a, typed_b, Sharing{Sharing::Mode::Face, {0, 1, 2, 3}, 3});
  CHECK(std::any_of(rep.begin(), rep.end(), [](const RuleViolation& v) { return v.rule == "same_type"; }));
  CHECK(std::any_of(rep.begin(), rep.end(), [](const RuleViolation& v) { return v.rule == "shared_palette"; }));

  // disjointness flips across a link
  const Quad b3{Palette{1, 2}, {1, 2}, {1, 2}, {3, 4}};
  const Quad b4{Palette{3, 4}, {1, 2}, {1, 2}, {1, 2}};
  const auto flip = propagate_disjointness(b3, b4, Sharing{Sharing::Mode::Link});
  CHECK(std::count_if(flip.begin(), flip.end(), [](const RuleViolation& v) { return v.rule == "disjointness"; }) == 2);

  CHECK_THROWS_AS(propagate_disjointness(b, b, Sharing{Sharing::Mode::Face, {0, 1, 1, 3}, 0}), Error);
  CHECK_THROWS_AS(propagate_disjointness(b, b, Sharing{Sharing::Mode::Face, {0, 1, 2, 3}, 4}), Error);
}

TEST_CASE("face rules hold for every obstructed pair sharing a face") {
  // all apex palettes over a fixed face, r = 4, palettes of size >= 2
  std::vector<Palette> subsets;
  for (unsigned m = 0; m < 16; ++m) {
    Palette p;
    for (int c = 0; c < 4; ++c) {
      if (m & (1u << c)) p.insert(c + 1);
    }
    if (p.size() >= 2) subsets.push_back(p);
  }
  long pairs = 0;
  for (const Palette& f1 : subsets) {
    for (const Palette& f2 : subsets) {
      for (const Palette& f3 : subsets) {
        std::vector<Palette> apexes;
        for (const Palette& x : subsets) {
          const Quad q{x, f1, f2, f3};
          if (!oracle_mono(q) && !oracle_sdr(q)) apexes.push_back(x);
        }
        for (const Palette& x : apexes) {
          for (const Palette& y : apexes) {
            ++pairs;
            REQUIRE(propagate_disjointness({x, f1, f2, f3}, {y, f1, f2, f3}, Sharing{}).empty());
          }
        }
      }
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("palettes from solver colorings of a blown-up link are consistent") {
  const auto profile = tetra_profile(SimplexSpec::regular(4, 1));
  const auto f = canonical_frame(profile.spec);
  HingeFrame g;
  for (int i = 0; i < 4; ++i) g[i] = f[i].padded(6) + Point{0.3, 0.2, 0.1, 0.4, 0, 0};
  const LinkedConfig lc = build_link(profile, f, g);
  for (int r : {3, 4, 5}) {
    const ColoringProblem problem = blow_up(lc, r);
    const auto res = solve_gr(problem, SolveOptions{60});
    REQUIRE(res.verdict == Verdict::Counterexample);
    REQUIRE(verify_coloring(problem, *res.witness).clean());
    int checked = 0;
    for (const CopyAdjacency& adj : lc.shared_faces) {
      if (adj.shared.size() != 3) continue;
      const IndexTuple& s = lc.tetra_copies[adj.first];
      const IndexTuple& t = lc.tetra_copies[adj.second];
      Sharing sh;
      std::vector<int> free_t{0, 1, 2, 3};
      for (int i = 0; i < 4; ++i) {
        const auto it = std::find(t.begin(), t.end(), s[i]);
        if (it == t.end()) {
          sh.apex = i;
        } else {
          sh.to[i] = static_cast<int>(it - t.begin());
          free_t.erase(std::find(free_t.begin(), free_t.end(), sh.to[i]));
        }
      }
      sh.to[sh.apex] = free_t.front();
      const auto rep = propagate_disjointness(palettes_of(s, *res.witness), palettes_of(t, *res.witness), sh);
      CHECK(rep.empty());
      ++checked;
    }
    CHECK(checked > 0);
    // the two endpoint copies are the ends of the link
    const Quad q0 = palettes_of(lc.tetra_copies[0], *res.witness);
    const Quad q1 = palettes_of(lc.tetra_copies[1], *res.witness);
    CHECK(propagate_disjointness(q0, q1, Sharing{Sharing::Mode::Link}).empty());
    CHECK(classify_quadruple(q0).kind == classify_quadruple(q1).kind);
  }
}
