#include "qpolish/derivative.hpp"

namespace qpolish {

std::string OrdinalValue::str() const {
  switch (shape) {
    case Shape::finite: return "finite(" + std::to_string(n) + ")";
    case Shape::omega_plus: return "omega_plus(" + std::to_string(n) + ")";
    case Shape::did_not_stabilize: return "did_not_stabilize(" + std::to_string(n) + ")";
  }
  return "?";
}

namespace {

bool has_oracle(const Truncation& t) {
  const Point probe = t.universe().first();
  return !t.is_restricted() && probe != npos && t.space().exact_locally_closed(probe, 0).has_value();
}

/// Least visible basic U with x ∈ U and U ∩ C = {x}, or npos.
std::size_t isolating_basic(const Truncation& t, Point x, const PointSet& closed) {
  PointSet rest = closed;
  rest.erase(x);
  for (std::size_t i = 0; i < t.basic_count(); ++i) {
    if (t.basic(i).contains(x) && !t.basic(i).intersects(rest)) return i;
  }
  return npos;
}

}  // namespace

DeriveStep derive_once(const Order& o, const PointSet& a, std::optional<std::size_t> stage) {
  const Truncation& t = o.window();
  const bool oracle = stage && has_oracle(t);
  DeriveStep out{t.empty_set(), {}};
  for (Point x : a) {
    if (!t.universe().contains(x)) continue;
    PointSet closed = o.down(x) & a;
    const std::size_t u = isolating_basic(t, x, closed);
    const bool lc = oracle ? *t.space().exact_locally_closed(x, *stage) : u != npos;
    if (lc) {
      out.witnesses.push_back({x, stage.value_or(0), u, std::move(closed), oracle});
    } else {
      out.next.insert(x);
    }
  }
  return out;
}

DeriveStep derive_once(const Truncation& t, const PointSet& a, std::optional<std::size_t> stage) {
  return derive_once(Order(t), a, stage);
}

namespace {

DerivativeTrace run_trace(const Order& o, std::size_t max_steps, OrdinalValue& value) {
  const Truncation& t = o.window();
  DerivativeTrace trace;
  trace.removed_at.assign(t.depth(), npos);
  PointSet cur = t.universe();
  trace.stages.push_back(cur);
  for (std::size_t step = 0; step < max_steps; ++step) {
    DeriveStep ds = derive_once(o, cur, step);
    if (ds.next == cur) {
      const bool unseen_removal =
          !t.fully_visible() && !t.is_restricted() && t.space().exact_stage_removes(step).value_or(false);
      value = unseen_removal ? OrdinalValue::did_not_stabilize(step) : OrdinalValue::finite(step);
      return trace;
    }
    for (auto& w : ds.witnesses) {
      w.stage = step;
      trace.removed_at[w.point] = step;
      trace.witnesses.push_back(std::move(w));
    }
    cur = std::move(ds.next);
    trace.stages.push_back(cur);
  }
  value = OrdinalValue::did_not_stabilize(max_steps);
  return trace;
}

}  // namespace

RankResult rank(const Truncation& t, std::size_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  RankResult r;
  const Order o(t);
  r.trace = run_trace(o, max_steps, r.value);
  const DisjointUnionSpace* du = t.space().as_disjoint_union();
  if (du && du->is_infinite_family() && !t.is_restricted()) {
    std::size_t parts = 0;
    for (Point p : t.universe()) parts = std::max(parts, du->locate(p).first + 1);
    for (std::size_t m = 0; m < parts; ++m) {
      const Truncation part(du->part(m), t.depth());
      r.part_ranks.push_back(rank(part, max_steps).value);
    }
    r.value = OrdinalValue::omega_plus(0);
  }
  return r;
}

Delta3Result delta3_condition(const Truncation& t, std::size_t max_steps) {
  const std::vector<Point> pts = t.universe().members();
  if (t.fully_visible() && pts.size() <= 16) {
    const Order o(t);
    std::vector<PointSet> nbhd;
    for (Point x : pts) {
      PointSet b = t.universe();
      for (std::size_t i = 0; i < t.basic_count(); ++i) {
        if (t.basic(i).contains(x)) b &= t.basic(i);
      }
      nbhd.push_back(std::move(b & o.down(x)));
    }
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << pts.size()); ++mask) {
      PointSet a = t.empty_set();
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if ((mask >> k) & 1U) a.insert(pts[k]);
      }
      bool found = false;
      for (std::size_t k = 0; k < pts.size() && !found; ++k) {
        if (((mask >> k) & 1U) && (nbhd[k] & a).is_singleton()) found = true;
      }
      if (!found) return {Verdict::fails_exactly, a, OrdinalValue::finite(0)};
    }
    return {Verdict::holds_exactly, t.empty_set(), rank(t, pts.size() + 1).value};
  }

  const RankResult r = rank(t, max_steps);
  const PointSet& last = r.trace.stages.back();
  if (last.empty()) {
    return {t.fully_visible() ? Verdict::holds_exactly : Verdict::holds_at_depth, last, r.value};
  }
  if (r.value.shape != OrdinalValue::Shape::finite) return {Verdict::inconclusive, last, r.value};
  if (t.fully_visible()) return {Verdict::fails_exactly, last, r.value};
  if (has_oracle(t)) {
    for (Point x : last) {
      if (*t.space().exact_locally_closed(x, r.value.n)) return {Verdict::inconclusive, last, r.value};
    }
    return {Verdict::fails_exactly, last, r.value};
  }
  return {Verdict::inconclusive, last, r.value};
}

Delta3Witness delta3_witness(const Truncation& t, const PointSet& x_points, std::size_t max_steps) {
  const PointSet xs_set = x_points & t.universe();
  const bool whole = xs_set == t.universe();
  const Truncation tx = whole ? t : t.restricted(xs_set);
  const RankResult r = rank(tx, max_steps);
  if (!r.trace.stages.back().empty()) {
    throw PreconditionError("the derivative of X does not reach the empty set within the budget");
  }
  std::vector<std::size_t> u_of(t.depth(), npos);
  for (const auto& w : r.trace.witnesses) u_of[w.point] = w.basic;

  const Order oy(t);
  const std::vector<Point> xs = xs_set.members();
  const std::size_t nb = t.basic_count();

  Delta3Witness out;
  std::vector<BorelExpr> outside;  // X ∖ Cl({x_i}) as a union of basics
  for (Point x : xs) {
    if (u_of[x] == npos) throw Inconclusive("no visible basic isolates point " + std::to_string(x) + " in its stage");
    out.stages.push_back(r.trace.removed_at[x]);
    std::vector<BorelExpr> miss;
    for (std::size_t b = 0; b < nb; ++b) {
      if (!t.basic(b).contains(x)) miss.push_back(BorelExpr::basic(b));
    }
    outside.push_back(BorelExpr::union_of(std::move(miss)));
  }

  // least[i][k]: least visible basic containing x_i but not x_k, for x_i ≰ x_k
  std::vector<std::vector<std::size_t>> least(xs.size(), std::vector<std::size_t>(xs.size(), npos));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (oy.leq(xs[i], xs[k])) continue;
      for (std::size_t b = 0; b < nb; ++b) {
        if (t.basic(b).contains(xs[i]) && !t.basic(b).contains(xs[k])) {
          least[i][k] = b;
          break;
        }
      }
      if (least[i][k] == npos) ++out.unrealized_separations;
    }
  }

  const std::size_t rounds = std::max(nb, xs.size());
  std::vector<std::pair<BorelExpr, BorelExpr>> outer;
  for (std::size_t j = 0; j < rounds; ++j) {
    std::vector<std::pair<BorelExpr, BorelExpr>> inner;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<std::size_t> v{u_of[xs[i]]};
      for (std::size_t b = 0; b <= j && b < nb; ++b) {
        if (t.basic(b).contains(xs[i])) v.push_back(b);
      }
      for (std::size_t k = 0; k <= j && k < xs.size(); ++k) {
        if (least[i][k] != npos) v.push_back(least[i][k]);
      }
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      inner.emplace_back(BorelExpr::meet(std::move(v)), outside[i]);
    }
    outer.emplace_back(BorelExpr::whole(), BorelExpr::sigma(2, std::move(inner)));
  }
  out.expr = BorelExpr::pi(3, std::move(outer));
  out.verified = extension(out.expr, t) == xs_set;
  return out;
}

}  // namespace qpolish
