#pragma once

// Brute-force reference computations used as oracles. Nothing here calls the
// library's order, closure or evaluation code: finite topologies are handled
// as explicit families of open masks.

#include "qpolish/borel.hpp"
#include "qpolish/seqnat.hpp"
#include "qpolish/space.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using qpolish::Mask;
using qpolish::Point;

inline Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline bool has(Mask m, std::size_t p) { return (m >> p) & 1U; }

/// A finite space as its complete list of open sets.
struct Topology {
  std::size_t n = 0;
  std::vector<Mask> opens;

  std::vector<Mask> closeds() const {
    std::vector<Mask> out;
    for (Mask u : opens) out.push_back(full_mask(n) & ~u);
    return out;
  }
  Mask closure(Mask s) const {
    Mask c = full_mask(n);
    for (Mask k : closeds()) {
      if ((s & ~k) == 0) c &= k;
    }
    return c;
  }
  Mask interior(Mask s) const {
    Mask i = 0;
    for (Mask u : opens) {
      if ((u & ~s) == 0) i |= u;
    }
    return i;
  }
  /// x in the closure of {y}
  bool leq(Point x, Point y) const { return has(closure(Mask{1} << y), x); }
};

/// Closes a family of subsets under finite intersections and unions.
inline Topology generate(std::size_t n, const std::vector<Mask>& subbasis) {
  std::set<Mask> base{full_mask(n)};
  for (Mask s : subbasis) {
    std::set<Mask> more = base;
    for (Mask b : base) more.insert(b & s);
    base = std::move(more);
  }
  std::set<Mask> opens{0};
  for (Mask b : base) {
    std::set<Mask> more = opens;
    for (Mask u : opens) more.insert(u | b);
    opens = std::move(more);
  }
  return {n, std::vector<Mask>(opens.begin(), opens.end())};
}

/// The Alexandrov topology of a preorder: leq[x][y] means x <= y, opens are up-sets.
inline Topology alexandrov(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<Mask> ups;
  for (std::size_t x = 0; x < n; ++x) {
    Mask up = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (leq[x][y]) up |= Mask{1} << y;
    }
    ups.push_back(up);
  }
  return generate(n, ups);
}

/// Every partial order on {0..n-1}, by brute force over all relations.
inline std::vector<std::vector<std::vector<bool>>> labeled_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) off.emplace_back(i, j);
    }
  }
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < off.size(); ++k) {
      if ((bits >> k) & 1U) r[off[k].first][off[k].second] = true;
    }
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (a != b && r[a][b] && r[b][a]) ok = false;
        for (std::size_t c = 0; c < n && ok; ++c) {
          if (r[a][b] && r[b][c] && !r[a][c]) ok = false;
        }
      }
    }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

/// Random T0 space: a random partial order extending a random linear order.
inline std::vector<std::vector<bool>> random_poset(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(0.35);
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) r[perm[i]][perm[j]] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

/// Random preorder: random relation, reflexive and transitive closure.
inline std::vector<std::vector<bool>> random_preorder(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.25);
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = i == j || coin(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

inline bool is_T0(const Topology& t) {
  for (std::size_t x = 0; x < t.n; ++x) {
    for (std::size_t y = x + 1; y < t.n; ++y) {
      bool separated = false;
      for (Mask u : t.opens) separated = separated || has(u, x) != has(u, y);
      if (!separated) return false;
    }
  }
  return true;
}

/// {x} is locally closed in the subspace A: some open U and closed C with U ∩ C ∩ A = {x}.
inline bool locally_closed_in(const Topology& t, Mask a, Point x) {
  for (Mask u : t.opens) {
    for (Mask c : t.closeds()) {
      if ((u & c & a) == (Mask{1} << x)) return true;
    }
  }
  return false;
}

inline bool is_TD(const Topology& t) {
  for (std::size_t x = 0; x < t.n; ++x) {
    if (!locally_closed_in(t, full_mask(t.n), static_cast<Point>(x))) return false;
  }
  return true;
}

inline bool is_sober(const Topology& t) {
  const std::vector<Mask> cl = t.closeds();
  for (Mask c : cl) {
    if (c == 0) continue;
    bool irreducible = true;
    for (Mask a : cl) {
      for (Mask b : cl) {
        if (a != c && b != c && (a | b) == c && (a & ~c) == 0 && (b & ~c) == 0) irreducible = false;
      }
    }
    if (!irreducible) continue;
    std::size_t generic = 0;
    for (std::size_t x = 0; x < t.n; ++x) {
      if (has(c, x) && t.closure(Mask{1} << x) == c) ++generic;
    }
    if (generic != 1) return false;
  }
  return true;
}

/// Every non-empty subset has a point whose singleton is locally closed in it.
inline bool delta3_condition(const Topology& t) {
  for (Mask a = 1; a <= full_mask(t.n) && a != 0; ++a) {
    bool found = false;
    for (std::size_t x = 0; x < t.n && !found; ++x) {
      if (has(a, x)) found = locally_closed_in(t, a, static_cast<Point>(x));
    }
    if (!found) return false;
    if (a == full_mask(t.n)) break;
  }
  return true;
}

/// Locally-closed-singleton derivative iterated to a fixed point.
inline std::size_t scattered_rank(const Topology& t) {
  Mask cur = full_mask(t.n);
  for (std::size_t step = 0;; ++step) {
    Mask next = cur;
    for (std::size_t x = 0; x < t.n; ++x) {
      if (has(cur, x) && locally_closed_in(t, cur, static_cast<Point>(x))) next &= ~(Mask{1} << x);
    }
    if (next == cur) return step;
    cur = next;
  }
}

/// Basic opens of a finite space as presented by the library: basic 0 = X and
/// basic x+1 = the smallest open containing x, computed from the open family.
inline std::vector<Mask> presented_basics(const Topology& t) {
  std::vector<Mask> out{full_mask(t.n)};
  for (std::size_t x = 0; x < t.n; ++x) {
    Mask m = full_mask(t.n);
    for (Mask u : t.opens) {
      if (has(u, x)) m &= u;
    }
    out.push_back(m);
  }
  return out;
}

/// Set-theoretic value of an expression tree over the given basics.
inline Mask evaluate(const qpolish::BorelExpr& e, const std::vector<Mask>& basics, std::size_t n) {
  using K = qpolish::BorelExpr::Kind;
  const Mask all = full_mask(n);
  switch (e.kind()) {
    case K::basic:
      return basics.at(e.indices()[0]);
    case K::meet: {
      Mask m = all;
      for (auto i : e.indices()) m &= basics.at(i);
      return m;
    }
    case K::union_of: {
      Mask m = 0;
      for (const auto& c : e.children()) m |= evaluate(c, basics, n);
      return m;
    }
    case K::sigma: {
      Mask m = 0;
      for (const auto& [a, b] : e.pairs()) m |= evaluate(a, basics, n) & ~evaluate(b, basics, n);
      return m & all;
    }
    case K::complement:
      return all & ~evaluate(e.children()[0], basics, n);
    case K::delta:
      return evaluate(e.children()[0], basics, n);
  }
  return 0;
}

/// A random well-formed expression with at most max_size nodes.
inline qpolish::BorelExpr random_expr(std::mt19937_64& rng, std::size_t basic_count, int level, std::size_t max_size) {
  using qpolish::BorelExpr;
  std::uniform_int_distribution<std::size_t> pick(0, basic_count - 1);
  std::uniform_int_distribution<int> choice(0, 3);
  if (level <= 1 || max_size <= 2) {
    switch (choice(rng) % (max_size >= 2 ? 3 : 1)) {
      case 0:
        return BorelExpr::basic(pick(rng));
      case 1:
        return BorelExpr::meet({pick(rng), pick(rng)});
      default:
        return BorelExpr::union_of({BorelExpr::basic(pick(rng)), BorelExpr::basic(pick(rng))});
    }
  }
  const std::size_t budget = max_size - 1;
  switch (choice(rng)) {
    case 0:
      return BorelExpr::complement(random_expr(rng, basic_count, level, budget));
    case 1: {
      auto a = random_expr(rng, basic_count, level - 1, budget / 2);
      auto b = random_expr(rng, basic_count, level - 1, budget - budget / 2);
      if (a.level().sigma_rank() >= level) a = BorelExpr::basic(pick(rng));
      if (b.level().sigma_rank() >= level) b = BorelExpr::basic(pick(rng));
      return BorelExpr::sigma(level, {{a, b}});
    }
    case 2: {
      auto a = random_expr(rng, basic_count, level - 1, budget / 2);
      auto b = random_expr(rng, basic_count, level - 1, budget - budget / 2);
      if (a.level().sigma_rank() >= level) a = BorelExpr::basic(pick(rng));
      if (b.level().sigma_rank() >= level) b = BorelExpr::basic(pick(rng));
      return BorelExpr::pi(level, {{a, b}});
    }
    default:
      return random_expr(rng, basic_count, level - 1, max_size);
  }
}

/// Prefix-minimal members of a finite set of sequences.
inline std::set<qpolish::SeqNat> prefix_minimal(const std::vector<qpolish::SeqNat>& s) {
  std::set<qpolish::SeqNat> out;
  for (const auto& a : s) {
    bool minimal = true;
    for (const auto& b : s) {
      if (b != a && b.is_prefix_of(a)) minimal = false;
    }
    if (minimal) out.insert(a);
  }
  return out;
}

/// Membership in A_p = ⋃_{n<|p|} ↑(0^n ⋄ (p(n)+1)) ∪ ↑0^{|p|}, by direct inspection of s.
inline bool in_ap_union(const qpolish::SeqNat& p, const qpolish::SeqNat& s) {
  for (std::size_t n = 0; n < p.length(); ++n) {
    if (s.length() <= n) return false;
    if (s[n] != 0) return s[n] == p[n] + 1;
  }
  return true;
}

}  // namespace oracle
