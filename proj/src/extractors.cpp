#include "qpolish/extractors.hpp"

#include <algorithm>
#include <functional>

namespace qpolish {

bool ExtractionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string failed_names(const ExtractionReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  return out;
}

std::string pt(Point p) { return std::to_string(p); }

}  // namespace

CheckFailed::CheckFailed(ExtractionReport r)
    : Inconclusive(r.tag + " report failed its checks: " + failed_names(r)), report_(std::move(r)) {}

ExtractionReport certify(ExtractionReport r) {
  if (!r.passed()) throw CheckFailed(std::move(r));
  return r;
}

namespace {

void require_nonempty(const Truncation& t) {
  if (t.universe().empty()) throw PreconditionError("the space has no visible points");
}

void require_perfect(const Truncation& t) {
  const AxiomResult p = is_perfect(t);
  if (p.fails()) {
    throw PreconditionError("not perfect: basic " + pt(p.witness.at(1)) + " isolates point " + pt(p.witness.at(0)));
  }
}

void require_TD(const Truncation& t) {
  const AxiomResult r = is_TD(t);
  if (r.fails()) throw PreconditionError("not T_D at point " + pt(r.witness.at(0)));
}

void require_T1(const Truncation& t) {
  const AxiomResult r = is_T1(t);
  if (r.fails()) throw PreconditionError("not T1: " + pt(r.witness.at(0)) + " <= " + pt(r.witness.at(1)));
}

PointSet set_of(const Truncation& t, const std::vector<Point>& pts) {
  PointSet s = t.empty_set();
  for (Point p : pts) s.insert(p);
  return s;
}

/// Least y strictly above x inside `within`, or npos.
Point least_strictly_above(const Order& o, Point x, const PointSet& within) {
  for (Point y : o.up(x) & within) {
    if (!o.leq(y, x)) return y;
  }
  return npos;
}

std::vector<Point> ascending_chain(const Order& o, Point x0, const PointSet& within, std::size_t target_len) {
  std::vector<Point> chain{x0};
  while (chain.size() < target_len) {
    const Point y = least_strictly_above(o, chain.back(), within);
    if (y == npos) break;
    chain.push_back(y);
  }
  return chain;
}

/// Checks shared by every S_D chain report.
void check_chain(ExtractionReport& r, const Order& o, const std::vector<Point>& chain) {
  const Truncation& t = o.window();
  bool strict = true;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      if (!o.leq(chain[i], chain[j]) || o.leq(chain[j], chain[i])) strict = false;
    }
  }
  r.check("chain_strict", strict);

  const PointSet c = set_of(t, chain);
  bool upsets_open = true;
  for (std::size_t i = 0; i < chain.size() && upsets_open; ++i) {
    const PointSet tail = set_of(t, std::vector<Point>(chain.begin() + static_cast<std::ptrdiff_t>(i), chain.end()));
    bool found = false;
    for (std::size_t b = 0; b < t.basic_count() && !found; ++b) found = (t.basic(b) & c) == tail;
    upsets_open = found;
  }
  r.check("upsets_open", upsets_open);

  bool no_isolated = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    for (std::size_t b = 0; b < t.basic_count(); ++b) {
      if (t.basic(b).contains(chain[i]) && (t.basic(b) & c).is_singleton()) no_isolated = false;
    }
  }
  r.check("no_isolated_point", no_isolated);
}

ExtractionReport sd_report(const Order& o, std::vector<Point> chain) {
  ExtractionReport r;
  r.tag = tags::SD;
  r.depth = o.window().depth();
  check_chain(r, o, chain);
  r.points = std::move(chain);
  return r;
}

}  // namespace

ExtractionReport chain_or_max(const Truncation& t, std::size_t target_len) {
  if (target_len < 2) throw std::invalid_argument("target_len must be at least 2");
  require_nonempty(t);
  require_perfect(t);
  require_TD(t);
  const Order o(t);
  const PointSet maxp = max_points(o);
  const PointSet certified = t.fully_visible() ? maxp : maxp & t.resolved_points();

  std::size_t steps = 0;
  for (Point x0 : t.resolved_points()) {
    ++steps;
    if ((o.up(x0) & certified).empty()) {
      std::vector<Point> chain = ascending_chain(o, x0, t.universe(), target_len);
      steps += chain.size();
      if (chain.size() < target_len) continue;
      ExtractionReport r = sd_report(o, std::move(chain));
      r.check("start_below_no_certified_max", true);
      r.steps_used = steps;
      return certify(std::move(r));
    }
  }

  if (certified.empty()) throw Inconclusive("no ascending chain and no certified maximal point at this depth");
  ExtractionReport r;
  r.tag = tags::max_T1;
  r.depth = t.depth();
  r.steps_used = steps;
  r.points = maxp.members();
  bool antichain = true;
  for (Point x : maxp) {
    if (!(o.up(x) & maxp).is_singleton()) antichain = false;
  }
  r.check("max_T1", antichain);
  r.check("max_perfect_at_depth", !is_perfect(t.restricted(maxp)).fails());
  bool below_max = true;
  for (Point x : t.resolved_points()) {
    if ((o.up(x) & maxp).empty()) below_max = false;
  }
  r.check("every_resolved_point_below_max", below_max);
  return certify(std::move(r));
}

namespace {

/// Least visible basic u with x ◁ B_u, B_u inside `inside` and inside D.
std::size_t triangle_basic(const Truncation& t, Point x, const PointSet& inside, const PointSet& d) {
  for (std::size_t u = 0; u < t.basic_count(); ++u) {
    const PointSet& b = t.basic(u);
    if (!b.contains(x) || !b.is_subset_of(inside) || !b.is_subset_of(d)) continue;
    if (triangle_rel(t, x, u)) return u;
  }
  return npos;
}

/// No two of the points are separated by disjoint visible basics.
bool no_T2_pair(const Truncation& t, const std::vector<Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (std::size_t a = 0; a < t.basic_count(); ++a) {
        if (!t.basic(a).contains(pts[i])) continue;
        for (std::size_t b = 0; b < t.basic_count(); ++b) {
          if (t.basic(b).contains(pts[j]) && !t.basic(a).intersects(t.basic(b))) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

ExtractionReport extract_S1(const Truncation& t, std::size_t count) {
  if (count < 2) throw std::invalid_argument("count must be at least 2");
  require_nonempty(t);
  require_perfect(t);
  require_T1(t);
  const PointSet d = d_set(t);
  const PointSet int_d = interior(t, d);
  if (int_d.empty()) throw PreconditionError("D(X) has empty interior at this depth");

  std::vector<Point> xs;
  std::vector<std::size_t> us;
  std::size_t steps = 0;
  for (Point x0 : int_d) {
    ++steps;
    const std::size_t u0 = triangle_basic(t, x0, t.universe(), d);
    if (u0 == npos) continue;
    xs.push_back(x0);
    us.push_back(u0);
    break;
  }
  if (xs.empty()) throw Inconclusive("no point of int D(X) has a visible basic U with x ◁ U ⊆ D(X)");

  while (xs.size() < count) {
    const std::size_t n = xs.size() - 1;
    PointSet v = t.universe();
    for (std::size_t i = 0; i <= n; ++i) v &= t.basic(us[i]) & basis_nbhd(t, xs[i], n);
    for (Point x : xs) v.erase(x);
    bool extended = false;
    for (Point y : v) {
      ++steps;
      const std::size_t u = triangle_basic(t, y, t.basic(us.back()), d);
      if (u == npos) continue;
      xs.push_back(y);
      us.push_back(u);
      extended = true;
      break;
    }
    if (!extended) {
      throw Inconclusive("V^" + std::to_string(n) + " has no usable point at depth " + std::to_string(t.depth()));
    }
  }

  ExtractionReport r;
  r.tag = tags::S1;
  r.depth = t.depth();
  r.steps_used = steps;
  r.points = xs;
  r.check("pairwise_distinct", set_of(t, xs).size() == xs.size());
  // A basic B_b containing x_i contains every x_{n+1} with n >= max(b, i).
  bool cofinite = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t b = 0; b < t.basic_count(); ++b) {
      if (!t.basic(b).contains(xs[i])) continue;
      for (std::size_t n = std::max(b, i); n + 1 < xs.size(); ++n) {
        if (!t.basic(b).contains(xs[n + 1])) cofinite = false;
      }
    }
  }
  r.check("cofinite_trace", cofinite);
  bool nested = true;
  for (std::size_t i = 1; i < us.size(); ++i) nested = nested && t.basic(us[i]).is_subset_of(t.basic(us[i - 1]));
  r.check("U_nested", nested);
  r.check("no_T2_pair", no_T2_pair(t, xs));
  return certify(std::move(r));
}

ExtractionReport extract_S2(const Truncation& t, std::size_t tree_height) {
  require_nonempty(t);
  require_perfect(t);
  require_T1(t);

  struct Node {
    Point x;
    std::size_t u;  // npos stands for U_ε = X
    std::size_t len;
  };
  auto extent = [&](std::size_t u) -> const PointSet& { return u == npos ? t.universe() : t.basic(u); };

  // Least (u, v) with x ∈ B_u, B_u and B_v inside nbhd, B_v non-empty and
  // disjoint from B_u. With lookahead, the points carried into the children
  // must admit such a split again one level down: the visible stand-in for
  // choosing points outside D(X).
  std::size_t steps = 0;
  std::function<std::pair<std::size_t, std::size_t>(Point, const PointSet&, std::size_t, bool)> split;
  split = [&](Point x, const PointSet& nbhd, std::size_t len, bool lookahead) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t u = 0; u < t.basic_count(); ++u) {
      const PointSet& eu = t.basic(u);
      if (!eu.contains(x) || !eu.is_subset_of(nbhd)) continue;
      if (lookahead && split(x, basis_nbhd(t, x, len + 1) & eu, len + 1, false).first == npos) continue;
      for (std::size_t v = 0; v < t.basic_count(); ++v) {
        ++steps;
        const PointSet& ev = t.basic(v);
        if (ev.empty() || !ev.is_subset_of(nbhd) || ev.intersects(eu)) continue;
        if (lookahead && split(ev.first(), basis_nbhd(t, ev.first(), len + 1) & ev, len + 1, false).first == npos) continue;
        return {u, v};
      }
    }
    return {npos, npos};
  };

  // Level-order: node k has children 2k+1 (σ⋄0) and 2k+2 (σ⋄1).
  std::vector<Node> nodes{{t.universe().first(), npos, 0}};
  for (std::size_t k = 0; nodes.size() < (std::size_t{2} << tree_height) - 1; ++k) {
    const Node cur = nodes[k];
    const PointSet nbhd = basis_nbhd(t, cur.x, cur.len) & extent(cur.u);
    const auto [bu, bv] = split(cur.x, nbhd, cur.len, cur.len + 1 < tree_height);
    if (bv == npos) {
      throw Inconclusive("no disjoint pair of visible basics below node " + std::to_string(k) + " (point " +
                         pt(cur.x) + ")");
    }
    nodes.push_back({cur.x, bu, cur.len + 1});
    nodes.push_back({t.basic(bv).first(), bv, cur.len + 1});
  }

  ExtractionReport r;
  r.tag = tags::S2;
  r.depth = t.depth();
  r.steps_used = steps;
  PointSet s = t.empty_set();
  for (const Node& n : nodes) {
    if (!s.contains(n.x)) r.points.push_back(n.x);
    s.insert(n.x);
  }
  bool disjoint = true;
  for (std::size_t k = 0; 2 * k + 2 < nodes.size(); ++k) {
    if (extent(nodes[2 * k + 1].u).intersects(extent(nodes[2 * k + 2].u))) disjoint = false;
  }
  r.check("siblings_disjoint", disjoint);
  const std::size_t first_leaf = nodes.size() / 2;
  PointSet leaves = t.empty_set();
  for (std::size_t k = first_leaf; k < nodes.size(); ++k) leaves.insert(nodes[k].x);
  r.check("leaves_distinct", leaves.size() == nodes.size() - first_leaf);
  bool clopen = true;
  for (const Node& n : nodes) {
    const PointSet in = extent(n.u) & s;
    for (Point y : s - in) {
      bool separated = false;
      for (std::size_t b = 0; b < t.basic_count() && !separated; ++b) {
        separated = t.basic(b).contains(y) && !t.basic(b).intersects(in);
      }
      clopen = clopen && separated;
    }
  }
  r.check("clopen_trace", clopen);
  r.notes.push_back("nodes=" + std::to_string(nodes.size()));
  return certify(std::move(r));
}

ExtractionReport classify_perfect_TD(const Truncation& t, const Budgets& b) {
  require_nonempty(t);
  require_perfect(t);
  require_TD(t);
  const std::size_t chain_len = b.chain_len ? b.chain_len : std::max<std::size_t>(4, t.depth() / 4);
  std::vector<std::string> attempts;

  const ExtractionReport com = chain_or_max(t, chain_len);
  if (com.tag == tags::SD) return com;

  const PointSet maxp = set_of(t, com.points);
  const Truncation m = maxp == t.universe() ? t : t.restricted(maxp);
  const bool s1_first = !interior(m, d_set(m)).empty();
  for (int pass = 0; pass < 2; ++pass) {
    const bool try_s1 = (pass == 0) == s1_first;
    try {
      ExtractionReport r = try_s1 ? extract_S1(m, b.s1_count) : extract_S2(m, b.s2_height);
      r.notes.insert(r.notes.begin(), attempts.begin(), attempts.end());
      return r;
    } catch (const Inconclusive& e) {
      attempts.push_back(std::string(try_s1 ? "S1" : "S2") + ": " + e.what());
    } catch (const PreconditionError& e) {
      attempts.push_back(std::string(try_s1 ? "S1" : "S2") + ": " + e.what());
    }
  }
  std::string msg = "no canonical perfect subspace certified at depth " + std::to_string(t.depth());
  for (const auto& a : attempts) msg += "; " + a;
  throw Inconclusive(msg);
}

ExtractionReport dense_open_family(const Truncation& t, const PointSet& y_in, const Pi2Presentation& presentation) {
  const PointSet y = y_in & t.universe();
  if (y.size() < 2) throw PreconditionError("Y is not perfect: it has fewer than two visible points");
  const Truncation ty = t.restricted(y);
  const Order oy(ty);
  for (Point p : ty.resolved_points()) {
    for (std::size_t b = 0; b < ty.basic_count(); ++b) {
      if (ty.basic(b).contains(p) && ty.basic(b).is_singleton()) {
        throw PreconditionError("Y is not perfect: basic " + std::to_string(b) + " isolates " + pt(p));
      }
    }
    if (!singleton_locally_closed_at_depth(oy, p)) throw PreconditionError("Y is not T_D at point " + pt(p));
  }

  const Order o(t);
  const PointSet c = closure(o, y);
  const Truncation tc = t.restricted(c);
  auto open_in_c = [&](const PointSet& w) {
    for (Point p : w) {
      bool ok = false;
      for (std::size_t b = 0; b < tc.basic_count() && !ok; ++b) ok = tc.basic(b).contains(p) && tc.basic(b).is_subset_of(w);
      if (!ok) return false;
    }
    return true;
  };
  auto dense_in_c = [&](const PointSet& w) {
    for (std::size_t b = 0; b < tc.basic_count(); ++b) {
      if (!tc.basic(b).empty() && !tc.basic(b).intersects(w)) return false;
    }
    return true;
  };

  ExtractionReport r;
  r.tag = tags::dense_family;
  r.depth = t.depth();
  bool w_dense = true;
  PointSet meet = c;
  // The family is emitted along the enumeration of the resolved part of Y,
  // up to the first W_i whose openness has no visible witness.
  for (Point yi : ty.resolved_points()) {
    const PointSet w = c - o.down(yi);
    ++r.steps_used;
    if (!open_in_c(w)) {
      r.notes.push_back("family stops before y=" + pt(yi) + ": openness of W not witnessed at depth");
      break;
    }
    w_dense = w_dense && dense_in_c(w);
    meet &= w;
    r.points.push_back(yi);
  }
  if (r.points.empty()) throw Inconclusive("no member W_i of the family is open at this depth");
  bool v_open = true;
  bool v_dense = true;
  for (const auto& [a, u] : presentation) {
    const PointSet v = (interior(tc, a & c) | u) & c;
    v_open = v_open && open_in_c(v);
    v_dense = v_dense && dense_in_c(v);
    meet &= v;
    ++r.steps_used;
  }
  if (!w_dense || !v_dense) {
    throw PreconditionError("a family member is not dense in the closure of Y (bad presentation)");
  }
  bool w_open = true;
  for (Point yi : r.points) w_open = w_open && open_in_c(c - o.down(yi));
  r.check("W_open", w_open);
  r.check("W_dense", w_dense);
  r.check("V_open", v_open);
  r.check("V_dense", v_dense);
  r.check("meet_misses_Y", !meet.intersects(set_of(t, r.points)));
  r.notes.push_back("closure=" + std::to_string(c.size()) + " W=" + std::to_string(r.points.size()) +
                    " V=" + std::to_string(presentation.size()));
  return certify(std::move(r));
}

PointSet OpenDescriptor::extent(const Truncation& t) const {
  if (kind == Kind::punctured) {
    PointSet s = t.universe();
    s.erase(point);
    return s;
  }
  PointSet s = t.empty_set();
  for (std::size_t b : basics) s |= basic_open(t, b);
  return s & t.universe();
}

std::string OpenDescriptor::str() const {
  if (kind == Kind::punctured) return "punctured(" + pt(point) + ")";
  std::string out = "union(";
  for (std::size_t i = 0; i < basics.size(); ++i) out += (i ? "," : "") + std::string("b") + std::to_string(basics[i]);
  return out + ")";
}

bool dense_at_depth(const Truncation& t, const OpenDescriptor& u) {
  const PointSet e = u.extent(t);
  for (std::size_t b = 0; b < t.basic_count(); ++b) {
    if (t.basic(b).empty() || t.basic(b).intersects(e)) continue;
    const bool cofinite = u.kind == OpenDescriptor::Kind::punctured;
    if (cofinite && t.space().basic_is_finite(b) == false) continue;
    return false;
  }
  return true;
}

ExtractionReport baire_witness(const Truncation& t, const std::vector<OpenDescriptor>& dense_opens, std::size_t count) {
  require_nonempty(t);
  if (count < 2) throw std::invalid_argument("count must be at least 2");
  if (dense_opens.empty()) throw PreconditionError("no dense open sets given");
  std::vector<PointSet> us;
  PointSet all = t.universe();
  for (std::size_t i = 0; i < dense_opens.size(); ++i) {
    if (!dense_at_depth(t, dense_opens[i])) {
      throw PreconditionError("U_" + std::to_string(i) + " = " + dense_opens[i].str() + " is not dense at depth");
    }
    us.push_back(dense_opens[i].extent(t));
    all &= us.back();
  }
  if (!all.empty()) {
    throw PreconditionError("the dense opens have a common visible point " + pt(all.first()));
  }
  const Order o(t);
  auto f = [](std::size_t n) { return std::min<std::size_t>(static_cast<std::size_t>(cantor_unpair(n).first), n); };

  std::vector<Point> xs{t.universe().first()};
  PointSet meet = t.universe();  // U_0 ∩ ... ∩ U_n
  std::size_t steps = 0;
  for (std::size_t n = 0; xs.size() < count; ++n) {
    meet &= us[std::min(n, us.size() - 1)];
    const Point xf = xs[f(n)];
    const PointSet v = (basis_nbhd(t, xf, n) - o.down(xf)) & meet;
    ++steps;
    if (v.empty()) {
      throw Inconclusive("V_" + std::to_string(n) + " ∩ U_0 ∩ ... ∩ U_" + std::to_string(n) + " is empty at depth " +
                         std::to_string(t.depth()));
    }
    const PointSet fresh = v - set_of(t, xs);
    xs.push_back(fresh.empty() ? v.first() : fresh.first());
  }

  ExtractionReport r;
  r.tag = tags::perfect_TD_Pi2;
  r.depth = t.depth();
  r.steps_used = steps;
  const PointSet y = set_of(t, xs);

  // m_j: least m with x_j outside U_0 ∩ ... ∩ U_m; no later x_n lies in Cl({x_j}).
  bool closure_bound = true;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::size_t m = npos;
    for (std::size_t i = 0; i < us.size() && m == npos; ++i) {
      if (!us[i].contains(xs[j])) m = i;
    }
    if (m == npos) {
      closure_bound = false;
      continue;
    }
    for (std::size_t n = m + 1; n < xs.size(); ++n) {
      if (o.leq(xs[n], xs[j])) closure_bound = false;
    }
  }
  r.check("closure_trace_bound", closure_bound);

  // x_j is not isolated by any basic of index <= N_j = max{n : f(n) = j, x_{n+1} emitted}.
  bool perfect = true;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::size_t nj = npos;
    for (std::size_t n = 0; n + 1 < xs.size(); ++n) {
      if (f(n) == j) nj = n;
    }
    if (nj == npos) continue;
    for (std::size_t b = 0; b <= nj && b < t.basic_count(); ++b) {
      if (t.basic(b).contains(xs[j]) && (t.basic(b) & y).is_singleton()) perfect = false;
    }
  }
  r.check("perfect_trace", perfect);

  // ⋂_n A_n with A_n = {x_0, ..., x_min(n, count-1)} ∪ ⋂_{i<=n} U_i.
  PointSet a = t.universe();
  PointSet prefix = t.empty_set();
  PointSet running = t.universe();
  for (std::size_t n = 0; n < std::max(us.size(), xs.size()); ++n) {
    if (n < xs.size()) prefix.insert(xs[n]);
    if (n < us.size()) running &= us[n];
    a &= prefix | running;
  }
  r.check("pi2_presentation", a == y);
  r.points = std::move(xs);
  return certify(std::move(r));
}

ExtractionReport sober_witness(const Truncation& t, std::size_t count) {
  if (count < 3) throw std::invalid_argument("count must be at least 3");
  if (t.space().tag().rfind("plus_generic", 0) != 0) throw PreconditionError("the ambient space is not plus_generic(X)");
  const Point g = 0;
  PointSet inner = t.universe();
  inner.erase(g);
  if (inner.empty()) throw PreconditionError("X has no visible points");
  const Truncation tx = t.restricted(inner);
  if (!irreducible_at_depth(tx, inner)) throw PreconditionError("X is not irreducible at depth");
  const SoberEvidence ev = sober_evidence(tx);
  if (!ev.nonsober) throw PreconditionError("X has a visible generic point of its own");

  const Order o(t);
  std::vector<Point> xs;
  PointSet v = basis_nbhd(t, g, 0);
  std::size_t steps = 0;
  auto first_inner = [&](const PointSet& s) { return (s & inner).first(); };
  xs.push_back(first_inner(v));
  if (xs.back() == npos) throw Inconclusive("V_0 has no point of X");
  while (xs.size() < count) {
    ++steps;
    const std::size_t n = xs.size() - 1;
    std::size_t ex = npos;
    for (std::size_t b = 0; b < t.basic_count() && ex == npos; ++b) {
      const PointSet& e = t.basic(b);
      if (!e.contains(g)) continue;
      bool misses = true;
      for (Point x : xs) misses = misses && !e.contains(x);
      if (misses) ex = b;
    }
    if (ex == npos) break;
    PointSet next = v & t.basic(ex) & basis_nbhd(t, g, n + 1);
    for (Point x : xs) next &= basis_nbhd(t, x, n + 1);
    const Point xn = first_inner(next);
    if (xn == npos) throw Inconclusive("V_" + std::to_string(n + 1) + " ∩ X is empty at depth");
    v = std::move(next);
    xs.push_back(xn);
  }
  if (xs.size() < 3) throw Inconclusive("fewer than three points could be emitted at this depth");

  ExtractionReport r;
  r.depth = t.depth();
  r.steps_used = steps;
  if (xs.size() < count) {
    r.notes.push_back("stopped after " + std::to_string(xs.size()) +
                      " points: no visible basic containing the generic point excludes all of them");
  }
  bool closure_finite = true;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    for (std::size_t m = n + 1; m < xs.size(); ++m) {
      if (o.leq(xs[m], xs[n])) closure_finite = false;
    }
  }
  r.check("closure_trace_finite", closure_finite);
  bool no_t2 = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      for (std::size_t n = j; n + 1 < xs.size(); ++n) {
        const PointSet both = basis_nbhd(t, xs[i], n + 1) & basis_nbhd(t, xs[j], n + 1);
        for (std::size_t m = n + 1; m < xs.size(); ++m) no_t2 = no_t2 && both.contains(xs[m]);
      }
    }
  }
  r.check("no_infinite_T2_trace", no_t2);

  bool chain = true;
  bool antichain = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const bool comparable = o.leq(xs[i], xs[j]) || o.leq(xs[j], xs[i]);
      chain = chain && comparable;
      antichain = antichain && !comparable;
    }
  }
  if (chain) {
    r.tag = tags::SD;
    ExtractionReport sd = sd_report(o, xs);
    r.checks.insert(r.checks.end(), sd.checks.begin(), sd.checks.end());
  } else if (antichain) {
    r.tag = tags::S1;
    r.check("A_T1", true);
  } else {
    throw Inconclusive("the emitted points are neither a chain nor an antichain");
  }
  r.points = std::move(xs);
  return certify(std::move(r));
}



namespace {

constexpr std::size_t kS0ChainTarget = 8;

/// W^k_{σ⋄n} minus x_σ is empty: a finite non-empty Δ2 set. On a fully
/// visible space that refutes the assumption that such sets are infinite;
/// otherwise an ascending chain in A_k is the S_D that makes the set finite.
ExtractionReport finite_delta2_fallback(const Order& o, const PointSet& a, const PointSet& w, std::size_t steps) {
  const Truncation& t = o.window();
  const std::string what = "the Δ2 set " + w.str() + " is finite";
  if (t.fully_visible()) throw PreconditionError(what + " in a fully visible space");
  for (Point x0 : a) {
    std::vector<Point> chain = ascending_chain(o, x0, a, kS0ChainTarget);
    steps += chain.size();
    if (chain.size() < kS0ChainTarget) continue;
    ExtractionReport r = sd_report(o, std::move(chain));
    r.steps_used = steps;
    r.notes.push_back(what + "; ascending chain found in A_k");
    return certify(std::move(r));
  }
  throw PreconditionError(what + " at depth and A_k has no ascending chain of length " +
                          std::to_string(kS0ChainTarget));
}

/// Longest path of the tree T over the rounds that ended in a restart.
std::vector<Point> konig_path(const Order& o, const std::vector<std::vector<Point>>& rounds) {
  if (rounds.empty()) return {};
  std::vector<std::vector<std::size_t>> from(rounds.size());
  from[0].assign(rounds[0].size(), 0);
  std::size_t last = 0;
  for (std::size_t k = 1; k < rounds.size(); ++k) {
    from[k].assign(rounds[k].size(), npos);
    bool any = false;
    for (std::size_t s = 0; s < rounds[k].size(); ++s) {
      for (std::size_t p = 0; p < rounds[k - 1].size(); ++p) {
        if (from[k - 1][p] == npos) continue;
        const Point lo = rounds[k - 1][p];
        const Point hi = rounds[k][s];
        if (o.leq(lo, hi) && !o.leq(hi, lo)) {
          from[k][s] = p;
          any = true;
          break;
        }
      }
    }
    if (!any) break;
    last = k;
  }
  std::vector<Point> path;
  std::size_t s = 0;
  while (from[last][s] == npos) ++s;
  for (std::size_t k = last + 1; k-- > 0;) {
    path.push_back(rounds[k][s]);
    if (k > 0) s = from[k][s];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

ExtractionReport extract_S0(const Truncation& t, std::size_t rank_budget, std::size_t step_budget) {
  require_nonempty(t);
  if (rank_budget < 1) throw std::invalid_argument("rank_budget must be at least 1");
  const Order o(t);
  const std::vector<Point> phi = t.universe().members();
  PointSet a = t.universe();
  std::vector<std::vector<Point>> rounds;
  std::vector<PointSet> as;
  std::size_t steps = 0;

  for (std::size_t k = 0; k < phi.size(); ++k) {
    as.push_back(a);
    std::vector<Point> x{a.first()};
    std::vector<PointSet> w{a};
    std::vector<SeqNat> seq{SeqNat{}};
    bool case_b = false;
    ++steps;
    for (std::size_t tt = 1; tt <= rank_budget; ++tt) {
      if (++steps > step_budget) throw Inconclusive("step budget exhausted at step (" + std::to_string(k) + "," + std::to_string(tt) + ")");
      const SeqNat s = SeqNat::unrank(tt);
      const SeqNat sigma = s.parent();
      const auto rs = static_cast<std::size_t>(sigma.rank());
      const Point xs = x[rs];
      PointSet wn = w[rs] & o.down(xs) & basis_nbhd(t, xs, tt);
      std::vector<Point> r_points;
      for (std::size_t q = 0; q < tt; ++q) {
        if (seq[q].is_prefix_of(sigma)) continue;
        wn -= o.down(x[q]);
        r_points.push_back(x[q]);
      }
      PointSet others = wn;
      others.erase(xs);
      if (others.empty()) return finite_delta2_fallback(o, a, wn, steps);

      Point chosen = npos;
      for (Point c : others) {
        bool incomparable = true;
        for (Point rp : r_points) incomparable = incomparable && !o.leq(c, rp) && !o.leq(rp, c);
        if (incomparable) {
          chosen = c;
          break;
        }
      }
      if (chosen != npos) {
        x.push_back(chosen);
        w.push_back(std::move(wn));
        seq.push_back(s);
        continue;
      }

      PointSet cand = wn;
      cand.erase(phi[k]);
      if (cand.empty()) return finite_delta2_fallback(o, a, wn, steps);
      const Point y = cand.first();
      std::size_t u = npos;
      for (std::size_t b = 0; b < t.basic_count() && u == npos; ++b) {
        if (t.basic(b).contains(y) && !(t.basic(b) & o.down(y)).contains(phi[k])) u = b;
      }
      if (u == npos) throw Inconclusive("no visible basic around " + pt(y) + " excludes φ(" + std::to_string(k) + ")");
      a = wn & t.basic(u) & o.down(y);
      rounds.push_back(std::move(x));
      case_b = true;
      break;
    }

    if (!case_b) {
      ExtractionReport r;
      r.tag = tags::S0;
      r.depth = t.depth();
      r.steps_used = steps;
      for (std::size_t i = 0; i < x.size(); ++i) r.s0_map.emplace_back(seq[i], x[i]);
      r.points = x;
      r.check("points_distinct", set_of(t, x).size() == x.size());
      bool iso = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (o.leq(x[i], x[j]) != seq[j].is_prefix_of(seq[i])) iso = false;
        }
      }
      r.check("order_isomorphism", iso);
      r.notes.push_back("round k=" + std::to_string(k));
      return certify(std::move(r));
    }

    std::vector<Point> path = konig_path(o, rounds);
    if (path.size() >= kS0ChainTarget) {
      ExtractionReport r = sd_report(o, path);
      bool in_a = true;
      for (std::size_t i = 0; i < path.size(); ++i) in_a = in_a && as[i].contains(path[i]);
      r.check("y_k_in_A_k", in_a);
      r.steps_used = steps;
      r.notes.push_back("restarts in rounds 0.." + std::to_string(k) + "; König path of length " +
                        std::to_string(path.size()));
      return certify(std::move(r));
    }
    if (a.empty()) break;
  }
  std::string msg = "restarted in " + std::to_string(rounds.size()) + " rounds without a certified chain";
  if (!rounds.empty()) msg += "; longest König path " + std::to_string(konig_path(o, rounds).size());
  throw Inconclusive(msg);
}

ExtractionReport classify_countable(const Truncation& t, const Budgets& b) {
  std::vector<std::string> notes;
  bool perfect_td = false;
  if (!t.universe().empty() && is_TD(t).holds() && !is_perfect(t).fails()) {
    perfect_td = true;
    try {
      return classify_perfect_TD(t, b);
    } catch (const Inconclusive& e) {
      notes.push_back(std::string("perfect T_D: ") + e.what());
    }
  }

  const Delta3Result d3 = delta3_condition(t, b.max_steps);
  if (d3.verdict == Verdict::holds_exactly || d3.verdict == Verdict::holds_at_depth) {
    ExtractionReport r;
    r.tag = tags::quasi_polish;
    r.depth = t.depth();
    r.check("delta3_condition", true);
    r.check("no_perfect_TD_extraction", true);
    r.notes = std::move(notes);
    r.notes.push_back(std::string("delta3 ") + verdict_name(d3.verdict) + ", rank " + d3.rank.str());
    if (perfect_td) r.notes.push_back("the space looks perfect T_D but no canonical subspace was certified");
    return certify(std::move(r));
  }
  notes.push_back(std::string("delta3 ") + verdict_name(d3.verdict));

  try {
    ExtractionReport r = extract_S0(t, b.rank_budget, b.step_budget);
    r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
    return r;
  } catch (const Inconclusive& e) {
    notes.push_back(std::string("S0: ") + e.what());
  } catch (const PreconditionError& e) {
    notes.push_back(std::string("S0: ") + e.what());
  }
  std::string msg = "classification inconclusive at depth " + std::to_string(t.depth());
  for (const auto& n : notes) msg += "; " + n;
  throw Inconclusive(msg);
}

}  // namespace qpolish
