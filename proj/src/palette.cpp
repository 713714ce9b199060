#include "egr/palette.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <iterator>

#include "egr/error.hpp"

namespace egr {

namespace {

const std::array<int, 4> kIdentity{0, 1, 2, 3};

bool is_type_a_normal(const Quad& q) {
  const Palette all{1, 2, 3};
  return q[0] == Palette{1, 2} && q[1] == Palette{2, 3} && q[2] == Palette{1, 3} &&
         std::includes(all.begin(), all.end(), q[3].begin(), q[3].end());
}

bool is_type_b_normal(const Quad& q) {
  return q[0] == Palette{1, 2} && q[1] == q[0] && q[2] == q[0] && q[3].count(3) && q[3].count(4);
}

Palette intersect(const Palette& a, const Palette& b) {
  Palette out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Candidate color map for one palette order; validity is left to the normal-form check.
std::optional<Relabeling> candidate(const Quad& quad, const std::array<int, 4>& order, QuadKind kind) {
  const Palette& p1 = quad[order[0]];
  const Palette& p2 = quad[order[1]];
  Relabeling rel;
  rel.order = order;
  int next = 1;
  const auto name = [&](int c) {
    if (!rel.colors.count(c)) rel.colors[c] = next++;
  };
  if (kind == QuadKind::TypeA) {
    if (p1.size() != 2 || p2.size() != 2) return std::nullopt;
    const Palette mid = intersect(p1, p2);
    if (mid.size() != 1) return std::nullopt;
    const int y = *mid.begin();
    name(*p1.begin() == y ? *p1.rbegin() : *p1.begin());
    name(y);
    name(*p2.begin() == y ? *p2.rbegin() : *p2.begin());
  } else {
    if (p1.size() != 2) return std::nullopt;
    for (int c : p1) name(c);
  }
  for (int j = 0; j < 4; ++j) {
    for (int c : quad[order[j]]) name(c);
  }
  return rel;
}

std::optional<Relabeling> find_form(const Quad& quad, QuadKind kind) {
  std::array<int, 4> order = kIdentity;
  do {
    if (auto rel = candidate(quad, order, kind)) {
      const Quad q = apply_relabeling(quad, *rel);
      if (kind == QuadKind::TypeA ? is_type_a_normal(q) : is_type_b_normal(q)) return rel;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

std::optional<int> common_color(const Quad& quad) {
  for (int c : quad[0]) {
    if (quad[1].count(c) && quad[2].count(c) && quad[3].count(c)) return c;
  }
  return std::nullopt;
}

// Classification without the size precondition and without throwing when no
// form fits; kind is absent in that case.
struct Attempt {
  std::optional<QuadKind> kind;
  QuadClass cls;
};

Attempt attempt(const Quad& quad) {
  Attempt a;
  if (auto c = common_color(quad)) {
    a.kind = a.cls.kind = QuadKind::Mono;
    a.cls.common_color = c;
    return a;
  }
  const SdrResult sdr = has_sdr({quad.begin(), quad.end()});
  if (sdr.representatives) {
    a.kind = a.cls.kind = QuadKind::Rainbow;
    a.cls.representatives = *sdr.representatives;
    return a;
  }
  auto ra = find_form(quad, QuadKind::TypeA);
  auto rb = find_form(quad, QuadKind::TypeB);
  if (ra && rb) fail(ErrorKind::InvariantFailure, "quadruple fits both normal forms");
  if (ra) {
    a.kind = a.cls.kind = QuadKind::TypeA;
    a.cls.relabeling = ra;
  } else if (rb) {
    a.kind = a.cls.kind = QuadKind::TypeB;
    a.cls.relabeling = rb;
  }
  return a;
}

std::string describe(const Palette& p) {
  std::string s = "{";
  for (int c : p) s += (s.size() > 1 ? "," : "") + std::to_string(c);
  return s + "}";
}

std::optional<QuadKind> typed_kind(const Quad& quad) {
  for (const Palette& p : quad) {
    if (p.size() < 2) return std::nullopt;
  }
  const Attempt a = attempt(quad);
  if (a.kind == QuadKind::TypeA || a.kind == QuadKind::TypeB) return a.kind;
  return std::nullopt;
}

}  // namespace

SdrResult has_sdr(const std::vector<Palette>& palettes) {
  const int n = static_cast<int>(palettes.size());
  std::map<int, int> owner;  // color -> palette index
  std::vector<int> rep(n, 0);
  SdrResult out;
  for (int i = 0; i < n; ++i) {
    std::set<int> seen_colors;
    std::vector<int> visited;
    const std::function<bool(int)> augment = [&](int v) {
      visited.push_back(v);
      for (int c : palettes[v]) {
        if (!seen_colors.insert(c).second) continue;
        const auto it = owner.find(c);
        if (it == owner.end() || augment(it->second)) {
          owner[c] = v;
          rep[v] = c;
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) {
      std::sort(visited.begin(), visited.end());
      if (!violates_hall(palettes, visited)) fail(ErrorKind::InvariantFailure, "Hall violator does not verify");
      out.hall_violator = visited;
      return out;
    }
  }
  out.representatives = rep;
  return out;
}

bool violates_hall(const std::vector<Palette>& palettes, const std::vector<int>& subset) {
  Palette all;
  for (int i : subset) {
    if (i < 0 || i >= static_cast<int>(palettes.size())) fail(ErrorKind::InvalidArgument, "subset index out of range");
    all.insert(palettes[i].begin(), palettes[i].end());
  }
  return all.size() < subset.size();
}

const char* quad_kind_name(QuadKind kind) {
  switch (kind) {
    case QuadKind::Rainbow: return "RAINBOW";
    case QuadKind::Mono: return "MONO";
    case QuadKind::TypeA: return "TYPE_A";
    case QuadKind::TypeB: return "TYPE_B";
  }
  return "?";
}

QuadClass classify_quadruple(const Quad& quad) {
  for (const Palette& p : quad) {
    if (p.size() < 2) fail(ErrorKind::InvalidArgument, "palette " + describe(p) + " has fewer than two colors");
  }
  const Attempt a = attempt(quad);
  if (!a.kind) fail(ErrorKind::InvariantFailure, "quadruple fits neither normal form");
  return a.cls;
}

Quad apply_relabeling(const Quad& quad, const Relabeling& rel) {
  std::array<int, 4> sorted = rel.order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kIdentity) fail(ErrorKind::InvalidArgument, "relabeling order is not a permutation");
  std::set<int> images;
  for (const auto& [from, to] : rel.colors) {
    if (!images.insert(to).second) fail(ErrorKind::InvalidArgument, "color map is not injective");
  }
  Quad out;
  for (int j = 0; j < 4; ++j) {
    for (int c : quad[rel.order[j]]) {
      const auto it = rel.colors.find(c);
      if (it == rel.colors.end()) fail(ErrorKind::InvalidArgument, "color " + std::to_string(c) + " is unmapped");
      out[j].insert(it->second);
    }
  }
  return out;
}

bool replays(const Quad& quad, const QuadClass& cls) {
  switch (cls.kind) {
    case QuadKind::Mono:
      return cls.common_color && std::all_of(quad.begin(), quad.end(), [&](const Palette& p) {
               return p.count(*cls.common_color) > 0;
             });
    case QuadKind::Rainbow: {
      if (cls.representatives.size() != 4) return false;
      const std::set<int> distinct(cls.representatives.begin(), cls.representatives.end());
      if (distinct.size() != 4) return false;
      for (int i = 0; i < 4; ++i) {
        if (!quad[i].count(cls.representatives[i])) return false;
      }
      return true;
    }
    case QuadKind::TypeA:
    case QuadKind::TypeB: {
      if (!cls.relabeling) return false;
      const Quad q = apply_relabeling(quad, *cls.relabeling);
      return cls.kind == QuadKind::TypeA ? is_type_a_normal(q) : is_type_b_normal(q);
    }
  }
  return false;
}

ClassificationScan classification_scan(int r) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "r must be positive");
  if (r > kClassificationCap) fail(ErrorKind::CapExceeded, "classification scan is capped at r = 5");
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << r); ++m) {
    if (std::popcount(m) >= 2) masks.push_back(m);
  }
  const auto to_palette = [](unsigned m) {
    Palette p;
    for (int c = 0; m; ++c, m >>= 1) {
      if (m & 1) p.insert(c + 1);
    }
    return p;
  };
  ClassificationScan out;
  std::array<unsigned, 4> q{};
  const std::size_t k = masks.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < k; ++d) {
          q = {masks[a], masks[b], masks[c], masks[d]};
          ++out.quadruples;
          if (q[0] & q[1] & q[2] & q[3]) continue;
          bool hall = true;
          for (unsigned s = 1; s < 16 && hall; ++s) {
            unsigned u = 0;
            for (int i = 0; i < 4; ++i) {
              if (s & (1u << i)) u |= q[i];
            }
            if (std::popcount(u) < std::popcount(s)) hall = false;
          }
          if (hall) continue;
          ++out.obstructed;
          const Quad quad{to_palette(q[0]), to_palette(q[1]), to_palette(q[2]), to_palette(q[3])};
          const Attempt at = attempt(quad);
          if (at.kind == QuadKind::TypeA && replays(quad, at.cls)) {
            ++out.type_a;
          } else if (at.kind == QuadKind::TypeB && replays(quad, at.cls)) {
            ++out.type_b;
          } else {
            ++out.unclassifiable;
          }
        }
      }
    }
  }
  return out;
}

std::vector<RuleViolation> propagate_disjointness(const Quad& quad, const Quad& quad_prime,
                                                  const Sharing& sharing) {
  std::array<int, 4> sorted = sharing.to;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kIdentity) fail(ErrorKind::InvalidArgument, "sharing map is not a permutation of the vertices");
  if (sharing.mode == Sharing::Mode::Face && (sharing.apex < 0 || sharing.apex > 3)) {
    fail(ErrorKind::InvalidArgument, "apex must be a vertex index in [0, 3]");
  }
  const auto& to = sharing.to;
  const auto disjoint = [](const Palette& a, const Palette& b) { return intersect(a, b).empty(); };
  std::vector<RuleViolation> out;
  const auto pair_rule = [&](int i, int j) {
    const bool lhs = disjoint(quad[i], quad[j]);
    const bool rhs = disjoint(quad_prime[to[i]], quad_prime[to[j]]);
    if (lhs != rhs) {
      out.push_back({"disjointness", "C" + std::to_string(i) + "∩C" + std::to_string(j) +
                                         (lhs ? " is empty" : " is nonempty") + " but C'" + std::to_string(to[i]) +
                                         "∩C'" + std::to_string(to[j]) + (rhs ? " is empty" : " is nonempty")});
    }
  };
  if (sharing.mode == Sharing::Mode::Face) {
    for (int i = 0; i < 4; ++i) {
      if (i == sharing.apex) continue;
      if (quad[i] != quad_prime[to[i]]) {
        out.push_back({"shared_palette", "vertex " + std::to_string(i) + " carries " + describe(quad[i]) +
                                             " and " + describe(quad_prime[to[i]])});
      }
    }
    for (int i = 0; i < 4; ++i) {
      if (i != sharing.apex) pair_rule(sharing.apex, i);
    }
  } else {
    pair_rule(0, 1);
    pair_rule(2, 3);
  }

  const auto k1 = typed_kind(quad);
  const auto k2 = typed_kind(quad_prime);
  if (k1 && k2 && *k1 != *k2) {
    out.push_back({"same_type", std::string(quad_kind_name(*k1)) + " against " + quad_kind_name(*k2)});
  }
  const auto recovery = [&](const Quad& q, const std::optional<QuadKind>& kind, const char* which) {
    if (!kind) return;
    const int empty = disjoint(q[0], q[1]) + disjoint(q[2], q[3]);
    const bool ok = (*kind == QuadKind::TypeA) ? empty == 0 : empty == 1;
    if (!ok) {
      out.push_back({"type_recovery", std::string(which) + " is " + quad_kind_name(*kind) + " with " +
                                          std::to_string(empty) + " empty path intersections"});
    }
  };
  if (sharing.mode == Sharing::Mode::Link) {
    recovery(quad, k1, "first quadruple");
    std::array<Palette, 4> mapped;
    for (int i = 0; i < 4; ++i) mapped[i] = quad_prime[to[i]];
    recovery(mapped, k2, "second quadruple");
  }
  return out;
}

}  // namespace egr
