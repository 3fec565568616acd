#include "qpolish/order.hpp"

namespace qpolish {

Order::Order(Truncation t) : t_(std::move(t)) {
  const PointSet& u = t_.universe();
  up_.assign(t_.depth(), t_.empty_set());
  down_.assign(t_.depth(), t_.empty_set());
  const Point probe = u.first();
  exact_ = probe != npos && t_.space().exact_leq(probe, probe).has_value();
  if (exact_) {
    for (Point x : u) {
      for (Point y : u) {
        if (*t_.space().exact_leq(x, y)) up_[x].insert(y);
      }
    }
  } else {
    for (Point x : u) {
      PointSet nb = u;
      for (std::size_t i = 0; i < t_.basic_count(); ++i) {
        if (t_.basic(i).contains(x)) nb &= t_.basic(i);
      }
      up_[x] = std::move(nb);
    }
  }
  for (Point x : u) {
    for (Point y : up_[x]) down_[y].insert(x);
  }
}

SpecializationAnswer leq(const Truncation& t, Point x, Point y) {
  if (x >= t.depth() || y >= t.depth()) throw std::out_of_range("leq arguments outside the truncation");
  if (auto e = t.space().exact_leq(x, y)) return {*e, Certainty::exact, t.depth()};
  for (std::size_t i = 0; i < t.basic_count(); ++i) {
    if (t.basic(i).contains(x) && !t.basic(i).contains(y)) return {false, Certainty::depth_bounded, t.depth()};
  }
  return {true, Certainty::depth_bounded, t.depth()};
}

PointSet closure(const Order& o, const PointSet& s) {
  PointSet out = o.window().empty_set();
  for (Point x : s) {
    if (o.window().universe().contains(x)) out |= o.down(x);
  }
  return out;
}

PointSet closure(const Truncation& t, const PointSet& s) { return closure(Order(t), s); }

PointSet interior(const Truncation& t, const PointSet& s) {
  PointSet out = t.empty_set();
  for (std::size_t i = 0; i < t.basic_count(); ++i) {
    if (t.basic(i).is_subset_of(s)) out |= t.basic(i);
  }
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds_exactly: return "holds_exactly";
    case Verdict::holds_at_depth: return "holds_at_depth";
    case Verdict::fails_exactly: return "fails_exactly";
    case Verdict::fails_at_depth: return "fails_at_depth";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

AxiomResult pair_axiom(const Truncation& t, bool symmetric) {
  const Order o(t);
  const bool final_answer = o.exact() || t.fully_visible();
  for (Point x : t.universe()) {
    for (Point y : o.up(x)) {
      if (y == x) continue;
      if (symmetric && !o.leq(y, x)) continue;
      return {final_answer ? Verdict::fails_exactly : Verdict::fails_at_depth, {x, y}};
    }
  }
  return {t.fully_visible() ? Verdict::holds_exactly : Verdict::holds_at_depth, {}};
}

}  // namespace

AxiomResult is_T0(const Truncation& t) { return pair_axiom(t, true); }
AxiomResult is_T1(const Truncation& t) { return pair_axiom(t, false); }

bool singleton_locally_closed_at_depth(const Order& o, Point x) {
  const Truncation& t = o.window();
  PointSet nb = t.universe();
  for (std::size_t i = 0; i < t.basic_count(); ++i) {
    if (t.basic(i).contains(x)) nb &= t.basic(i);
  }
  nb &= o.down(x);
  return nb.size() == 1 && nb.contains(x);
}

AxiomResult is_TD(const Truncation& t) {
  const Order o(t);
  if (t.fully_visible()) {
    for (Point x : t.universe()) {
      if (!singleton_locally_closed_at_depth(o, x)) return {Verdict::fails_exactly, {x}};
    }
    return {Verdict::holds_exactly, {}};
  }
  const Point probe = t.universe().first();
  if (!t.is_restricted() && probe != npos && t.space().exact_locally_closed(probe, 0)) {
    for (Point x : t.universe()) {
      if (!*t.space().exact_locally_closed(x, 0)) return {Verdict::fails_exactly, {x}};
    }
    return {Verdict::holds_exactly, {}};
  }
  for (Point x : t.universe()) {
    if (!singleton_locally_closed_at_depth(o, x)) return {Verdict::inconclusive, {x}};
  }
  return {Verdict::holds_at_depth, {}};
}

AxiomResult is_T2(const Truncation& t) {
  const std::size_t nb = t.basic_count();
  // separated_from[U] = union of the visible basics disjoint from U
  std::vector<PointSet> separated_from(nb, t.empty_set());
  for (std::size_t i = 0; i < nb; ++i) {
    if (t.basic(i).empty()) continue;
    for (std::size_t j = i + 1; j < nb; ++j) {
      if (!t.basic(j).empty() && !t.basic(i).intersects(t.basic(j))) {
        separated_from[i] |= t.basic(j);
        separated_from[j] |= t.basic(i);
      }
    }
  }
  std::optional<bool> oracle;
  if (!t.is_restricted()) oracle = t.space().exact_T2();
  for (Point x : t.universe()) {
    PointSet sep = t.empty_set();
    for (std::size_t i = 0; i < nb; ++i) {
      if (t.basic(i).contains(x)) sep |= separated_from[i];
    }
    for (Point y : t.universe()) {
      if (y <= x || sep.contains(y)) continue;
      if (t.fully_visible()) return {Verdict::fails_exactly, {x, y}};
      if (oracle && *oracle) return {Verdict::holds_exactly, {}};
      return {oracle ? Verdict::fails_exactly : Verdict::fails_at_depth, {x, y}};
    }
  }
  if (t.fully_visible()) return {Verdict::holds_exactly, {}};
  if (oracle) return {*oracle ? Verdict::holds_exactly : Verdict::fails_exactly, {}};
  return {Verdict::holds_at_depth, {}};
}

AxiomResult is_perfect(const Truncation& t) {
  const auto pc = t.space().point_count();
  const bool all_points_visible = pc && *pc <= t.depth();
  if (all_points_visible) {
    for (std::size_t i = 0; i < t.basic_count(); ++i) {
      if (t.basic(i).size() == 1) return {Verdict::fails_exactly, {t.basic(i).first(), i}};
    }
  }
  return {t.fully_visible() ? Verdict::holds_exactly : Verdict::holds_at_depth, {}};
}

PointSet max_points(const Order& o) {
  PointSet out = o.window().empty_set();
  for (Point x : o.window().universe()) {
    if (o.up(x).size() == 1) out.insert(x);
  }
  return out;
}

PointSet max_points(const Truncation& t) { return max_points(Order(t)); }

namespace {

/// Tabulation behind x ◁ U: for each point, the basic indices W that are
/// disjoint from some visible neighbourhood of the point; for each basic U,
/// the non-empty basics contained in it.
struct TriangleTables {
  std::vector<PointSet> bad;   // indexed by point, sets of basic indices
  std::vector<PointSet> subs;  // indexed by basic, sets of basic indices

  explicit TriangleTables(const Truncation& t) {
    const std::size_t nb = t.basic_count();
    const std::size_t d = t.depth();
    std::vector<PointSet> disjoint(nb, PointSet(d));
    for (std::size_t v = 0; v < nb; ++v) {
      for (std::size_t w = 0; w < nb; ++w) {
        if (!t.basic(w).empty() && !t.basic(v).intersects(t.basic(w))) disjoint[v].insert(w);
      }
    }
    bad.assign(d, PointSet(d));
    for (Point x : t.universe()) {
      for (std::size_t v = 0; v < nb; ++v) {
        if (t.basic(v).contains(x)) bad[x] |= disjoint[v];
      }
    }
    subs.assign(nb, PointSet(d));
    for (std::size_t u = 0; u < nb; ++u) {
      for (std::size_t w = 0; w < nb; ++w) {
        if (!t.basic(w).empty() && t.basic(w).is_subset_of(t.basic(u))) subs[u].insert(w);
      }
    }
  }
};

}  // namespace

bool triangle_rel(const Truncation& t, Point x, std::size_t u) {
  if (u >= t.basic_count() || !t.basic(u).contains(x)) {
    throw PreconditionError("triangle_rel: point " + std::to_string(x) + " is not in basic " + std::to_string(u));
  }
  const TriangleTables tab(t);
  return !tab.bad[x].intersects(tab.subs[u]);
}

PointSet d_set(const Truncation& t) {
  const TriangleTables tab(t);
  PointSet out = t.empty_set();
  const auto pc = t.space().point_count();
  const bool all_points_visible = pc && *pc <= t.depth();
  for (Point x : t.universe()) {
    for (std::size_t u = 0; u < t.basic_count(); ++u) {
      // a visible singleton of an infinite space is a window artifact
      if (!all_points_visible && t.basic(u).is_singleton()) continue;
      if (t.basic(u).contains(x) && !tab.bad[x].intersects(tab.subs[u])) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

bool is_sober(const FiniteSpace& fs) {
  const auto opens = fs.opens();
  const Mask full = fs.full();
  for (Mask open : opens) {
    const Mask c = full & ~open;
    if (c == 0) continue;
    bool irreducible = true;
    for (std::size_t a = 0; a < opens.size() && irreducible; ++a) {
      if ((opens[a] & c) == 0) continue;
      for (std::size_t b = a + 1; b < opens.size(); ++b) {
        if ((opens[b] & c) != 0 && (opens[a] & opens[b] & c) == 0) {
          irreducible = false;
          break;
        }
      }
    }
    if (!irreducible) continue;
    int generic = 0;
    for (Point x = 0; x < fs.point_count(); ++x) {
      if (mask_has(c, x) && fs.closure(mask_of(x)) == c) ++generic;
    }
    if (generic != 1) return false;
  }
  return true;
}

bool irreducible_at_depth(const Truncation& t, const PointSet& c) {
  if (c.empty()) return false;
  std::vector<PointSet> meeting;
  for (std::size_t i = 0; i < t.basic_count(); ++i) {
    PointSet m = t.basic(i) & c;
    if (!m.empty()) meeting.push_back(std::move(m));
  }
  for (std::size_t a = 0; a < meeting.size(); ++a) {
    for (std::size_t b = a + 1; b < meeting.size(); ++b) {
      if (!meeting[a].intersects(meeting[b])) return false;
    }
  }
  return true;
}

SoberEvidence sober_evidence(const Truncation& t) {
  const Order o(t);
  std::vector<PointSet> candidates{t.universe()};
  for (std::size_t i = 1; i < t.basic_count(); ++i) candidates.push_back(t.universe() - t.basic(i));
  for (const PointSet& c : candidates) {
    if (!irreducible_at_depth(t, c)) continue;
    bool generic = false;
    for (Point g : c) {
      if (!c.is_subset_of(o.down(g))) continue;
      if (t.fully_visible() || t.resolved(g)) {
        generic = true;
        break;
      }
    }
    if (!generic) return {true, c};
  }
  return {false, t.empty_set()};
}

}  // namespace qpolish
