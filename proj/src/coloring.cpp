#include "egr/coloring.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>

#include "egr/error.hpp"
#include "egr/rectangle.hpp"

namespace egr {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

Mask bit(int c) { return Mask{1} << c; }

void check_tuples(const CopyList& list, int n, const char* what) {
  for (const IndexTuple& t : list) {
    if (t.size() < 2) fail(ErrorKind::InvalidArgument, std::string(what) + " target with fewer than two points");
    std::set<int> seen;
    for (int i : t) {
      if (i < 0 || i >= n) fail(ErrorKind::InvalidArgument, std::string(what) + " target index out of range");
      if (!seen.insert(i).second) fail(ErrorKind::InvalidArgument, std::string(what) + " target repeats a point");
    }
  }
}

class Search {
 public:
  Search(const ColoringProblem& p, double budget)
      : p_(p), n_(static_cast<int>(p.cfg.size())), full_(p.r == 64 ? ~Mask{0} : bit(p.r) - 1),
        dom_(n_, full_), color_(n_, -1), nbr_(n_), mono_of_(n_), rain_of_(n_), used_(p.r, 0),
        start_(Clock::now()), budget_(budget) {
    for (const IndexTuple& t : p.mono) {
      if (t.size() == 2) {
        nbr_[t[0]].push_back(t[1]);
        nbr_[t[1]].push_back(t[0]);
      } else {
        for (int v : t) mono_of_[v].push_back(&t);
      }
    }
    for (const IndexTuple& t : p.rainbow) {
      for (int v : t) rain_of_[v].push_back(&t);
    }
    for (auto& list : nbr_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  bool run() { return dfs(); }

  std::vector<int> coloring() const { return color_; }
  long nodes() const { return nodes_; }

 private:
  bool restrict(int v, Mask mask) {
    const Mask nd = dom_[v] & mask;
    if (nd == dom_[v]) return true;
    if (nd == 0) return false;
    trail_.push_back({v, dom_[v]});
    dom_[v] = nd;
    if (color_[v] < 0 && std::has_single_bit(nd)) queue_.push_back(v);
    return true;
  }

  void set_color(int v, int c) {
    color_[v] = c;
    ++used_[c];
    assigned_.push_back(v);
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int v = queue_.back();
      queue_.pop_back();
      if (color_[v] < 0) {
        if (!std::has_single_bit(dom_[v])) continue;
        set_color(v, std::countr_zero(dom_[v]));
      }
      const int c = color_[v];
      for (int u : nbr_[v]) {
        if (color_[u] == c) return false;
        if (color_[u] < 0 && !restrict(u, ~bit(c))) return false;
      }
      for (const IndexTuple* t : mono_of_[v]) {
        int open = -1, n_open = 0;
        bool same = true;
        for (int w : *t) {
          if (color_[w] < 0) {
            ++n_open;
            open = w;
          } else if (color_[w] != c) {
            same = false;
            break;
          }
        }
        if (!same) continue;
        if (n_open == 0) return false;
        if (n_open == 1 && !restrict(open, ~bit(c))) return false;
      }
      for (const IndexTuple* t : rain_of_[v]) {
        Mask seen = 0;
        int open = -1, n_open = 0;
        bool repeat = false;
        for (int w : *t) {
          if (color_[w] < 0) {
            ++n_open;
            open = w;
          } else if (seen & bit(color_[w])) {
            repeat = true;
            break;
          } else {
            seen |= bit(color_[w]);
          }
        }
        if (repeat) continue;
        if (n_open == 0) return false;
        if (n_open == 1 && !restrict(open, seen)) return false;
      }
    }
    return true;
  }

  void undo(std::size_t trail_mark, std::size_t assigned_mark) {
    while (trail_.size() > trail_mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
    while (assigned_.size() > assigned_mark) {
      const int v = assigned_.back();
      --used_[color_[v]];
      color_[v] = -1;
      assigned_.pop_back();
    }
    queue_.clear();
  }

  bool dfs() {
    if ((++nodes_ & 1023) == 1 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > budget_) {
      std::ostringstream msg;
      msg << "search budget of " << budget_ << " s exhausted after " << nodes_ << " nodes";
      fail(ErrorKind::Indeterminate, msg.str());
    }
    int v = -1, best = 65;
    for (int i = 0; i < n_; ++i) {
      if (color_[i] >= 0) continue;
      const int size = std::popcount(dom_[i]);
      if (size < best) {
        best = size;
        v = i;
      }
    }
    if (v < 0) return true;
    // colors never used so far are interchangeable: try only the first of them
    Mask used = 0;
    for (int c = 0; c < p_.r; ++c) {
      if (used_[c] > 0) used |= bit(c);
    }
    Mask allowed = dom_[v] & used;
    const Mask fresh = dom_[v] & ~used;
    if (fresh) allowed |= fresh & (~fresh + 1);
    while (allowed) {
      const int c = std::countr_zero(allowed);
      allowed &= allowed - 1;
      const std::size_t tm = trail_.size(), am = assigned_.size();
      trail_.push_back({v, dom_[v]});
      dom_[v] = bit(c);
      set_color(v, c);
      queue_.push_back(v);
      if (propagate() && dfs()) return true;
      undo(tm, am);
    }
    return false;
  }

  const ColoringProblem& p_;
  int n_;
  Mask full_;
  std::vector<Mask> dom_;
  std::vector<int> color_;
  std::vector<std::vector<int>> nbr_;
  std::vector<std::vector<const IndexTuple*>> mono_of_, rain_of_;
  std::vector<int> used_;
  std::vector<std::pair<int, Mask>> trail_;
  std::vector<int> assigned_;
  std::vector<int> queue_;
  long nodes_ = 0;
  Clock::time_point start_;
  double budget_;
};

bool all_equal(const IndexTuple& t, const std::vector<int>& col) {
  for (int v : t) {
    if (col[v] != col[t[0]]) return false;
  }
  return true;
}

bool all_distinct(const IndexTuple& t, const std::vector<int>& col) {
  Mask seen = 0;
  for (int v : t) {
    if (seen & bit(col[v])) return false;
    seen |= bit(col[v]);
  }
  return true;
}

bool avoids(const ColoringProblem& p, const std::vector<int>& col) {
  for (const IndexTuple& t : p.mono) {
    if (all_equal(t, col)) return false;
  }
  for (const IndexTuple& t : p.rainbow) {
    if (all_distinct(t, col)) return false;
  }
  return true;
}

}  // namespace

void validate(const ColoringProblem& p) {
  if (p.r < 1 || p.r > kMaxColors) {
    fail(ErrorKind::InvalidArgument, "color count must lie in [1, " + std::to_string(kMaxColors) + "]");
  }
  validate(p.cfg);
  const int n = static_cast<int>(p.cfg.size());
  check_tuples(p.mono, n, "mono");
  check_tuples(p.rainbow, n, "rainbow");
}

ColoringProblem make_problem(const Configuration& cfg, const std::optional<SimplexSpec>& mono,
                             const std::optional<SimplexSpec>& rainbow, int r, const ToleranceConfig& tol) {
  ColoringProblem p;
  p.cfg = cfg;
  p.r = r;
  if (mono) p.mono = enumerate_copies(cfg, *mono, tol);
  if (rainbow) p.rainbow = enumerate_copies(cfg, *rainbow, tol);
  validate(p);
  return p;
}

ColoringProblem aux1_problem(int s, double a, double b, int r) {
  const Configuration cfg = aux1_configuration(s, a, b);
  const SimplexSpec pair{{{0, a * a}, {a * a, 0}}};
  const SimplexSpec rect = SimplexSpec::from_points(cfg.select(cfg.copies.at("rectangle").front()));
  return make_problem(cfg, pair, rect, r);
}

const char* verdict_name(Verdict v) { return v == Verdict::Forced ? "FORCED" : "COUNTEREXAMPLE"; }

SearchResult solve_gr(const ColoringProblem& p, const SolveOptions& opts) {
  validate(p);
  if (!(opts.budget_seconds > 0)) fail(ErrorKind::InvalidArgument, "budget must be positive");
  const auto t0 = Clock::now();
  Search search(p, opts.budget_seconds);
  SearchResult out;
  if (search.run()) {
    out.verdict = Verdict::Counterexample;
    out.witness = search.coloring();
    if (!verify_coloring(p, *out.witness).clean()) {
      fail(ErrorKind::InvariantFailure, "solver witness fails verification");
    }
  } else {
    out.verdict = Verdict::Forced;
  }
  out.stats.nodes = search.nodes();
  out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

ColoringReport verify_coloring(const ColoringProblem& p, const std::vector<int>& coloring) {
  if (coloring.size() != p.cfg.size()) fail(ErrorKind::InvalidArgument, "coloring is not total on the configuration");
  for (int c : coloring) {
    if (c < 0 || c >= p.r) fail(ErrorKind::InvalidArgument, "color " + std::to_string(c) + " outside [0, r)");
  }
  ColoringReport rep;
  for (const IndexTuple& t : p.mono) {
    if (all_equal(t, coloring)) rep.mono_hits.push_back(t);
  }
  for (const IndexTuple& t : p.rainbow) {
    if (all_distinct(t, coloring)) rep.rainbow_hits.push_back(t);
  }
  return rep;
}

SearchResult exhaustive_oracle(const ColoringProblem& p) {
  validate(p);
  const int n = static_cast<int>(p.cfg.size());
  if (n * std::log(static_cast<double>(p.r)) > std::log(kOracleCap) + 1e-9) {
    fail(ErrorKind::CapExceeded, "oracle is capped at r^n <= 1e7");
  }
  const auto t0 = Clock::now();
  SearchResult out;
  std::vector<int> col(n, 0);
  for (;;) {
    ++out.stats.nodes;
    if (avoids(p, col)) {
      out.verdict = Verdict::Counterexample;
      out.witness = col;
      break;
    }
    int i = n - 1;
    while (i >= 0 && col[i] == p.r - 1) col[i--] = 0;
    if (i < 0) {
      out.verdict = Verdict::Forced;
      break;
    }
    ++col[i];
  }
  out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

int mono_clique_bound(const ColoringProblem& p) {
  const int n = static_cast<int>(p.cfg.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const IndexTuple& t : p.mono) {
    if (t.size() == 2) adj[t[0]][t[1]] = adj[t[1]][t[0]] = 1;
  }
  int best = n > 0 ? 1 : 0;
  // Bron–Kerbosch with pivoting
  const auto expand = [&](auto&& self, std::vector<int>& clique, std::vector<int> cand, std::vector<int> excl) -> void {
    if (cand.empty() && excl.empty()) {
      best = std::max(best, static_cast<int>(clique.size()));
      return;
    }
    if (static_cast<int>(clique.size() + cand.size()) <= best) return;
    int pivot = cand.empty() ? excl.front() : cand.front(), most = -1;
    for (const auto* set : {&cand, &excl}) {
      for (int u : *set) {
        int deg = 0;
        for (int v : cand) deg += adj[u][v];
        if (deg > most) {
          most = deg;
          pivot = u;
        }
      }
    }
    const std::vector<int> snapshot = cand;
    for (int v : snapshot) {
      if (adj[pivot][v]) continue;
      std::vector<int> nc, ne;
      for (int u : cand) {
        if (adj[v][u]) nc.push_back(u);
      }
      for (int u : excl) {
        if (adj[v][u]) ne.push_back(u);
      }
      clique.push_back(v);
      self(self, clique, nc, ne);
      clique.pop_back();
      cand.erase(std::find(cand.begin(), cand.end(), v));
      excl.push_back(v);
    }
  };
  std::vector<int> clique, all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  expand(expand, clique, all, {});
  return best;
}

FivePointScan five_point_logic_scan(int r) {
  if (r < 3) fail(ErrorKind::InvalidArgument, "five-point scan needs r >= 3");
  if (r > 5) fail(ErrorKind::CapExceeded, "five-point scan is capped at r = 5");
  enum { A, B, P, M, N };
  const int tri[4][3] = {{N, P, A}, {N, P, B}, {N, M, A}, {N, M, B}};
  FivePointScan out;
  std::vector<int> col(5, 0);
  for (long code = 0; code < static_cast<long>(std::pow(r, 5) + 0.5); ++code) {
    long c = code;
    for (int i = 0; i < 5; ++i) {
      col[i] = static_cast<int>(c % r);
      c /= r;
    }
    ++out.total;
    if (col[A] == col[B]) continue;
    bool admissible = true;
    for (const auto& t : tri) {
      const bool mono = col[t[0]] == col[t[1]] && col[t[1]] == col[t[2]];
      const bool rainbow = col[t[0]] != col[t[1]] && col[t[1]] != col[t[2]] && col[t[0]] != col[t[2]];
      if (mono || rainbow) admissible = false;
    }
    if (!admissible) continue;
    (col[M] == col[P] ? out.conforming : out.violations) += 1;
  }
  return out;
}

}  // namespace egr
