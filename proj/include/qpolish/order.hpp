#pragma once

#include "qpolish/truncation.hpp"

#include <vector>

namespace qpolish {

enum class Certainty { exact, depth_bounded };

/// x <= y in the specialization order, with the provenance of the answer.
/// A depth-bounded "false" is final: the separating basic stays visible at
/// every larger depth.
struct SpecializationAnswer {
  bool related = false;
  Certainty certainty = Certainty::depth_bounded;
  std::size_t depth = 0;
};

/// Specialization preorder of a window, tabulated once. Uses the space's
/// exact oracle when it has one, otherwise the depth-bounded rule "every
/// visible basic containing x contains y".
class Order {
 public:
  explicit Order(Truncation t);

  const Truncation& window() const { return t_; }
  bool exact() const { return exact_; }
  bool leq(Point x, Point y) const { return up_.at(x).contains(y); }
  /// {y in the universe : x <= y}
  const PointSet& up(Point x) const { return up_.at(x); }
  /// {y in the universe : y <= x}, the visible part of Cl({x}).
  const PointSet& down(Point x) const { return down_.at(x); }

 private:
  Truncation t_;
  bool exact_ = false;
  std::vector<PointSet> up_;
  std::vector<PointSet> down_;
};

SpecializationAnswer leq(const Truncation& t, Point x, Point y);

/// Over-approximation of Cl(S) among visible points; shrinks with depth.
PointSet closure(const Order& o, const PointSet& s);
PointSet closure(const Truncation& t, const PointSet& s);
/// Union of the visible basics contained in S; grows with depth.
PointSet interior(const Truncation& t, const PointSet& s);

enum class Verdict { holds_exactly, holds_at_depth, fails_exactly, fails_at_depth, inconclusive };

const char* verdict_name(Verdict v);

struct AxiomResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Point> witness;
  bool holds() const { return verdict == Verdict::holds_exactly || verdict == Verdict::holds_at_depth; }
  bool fails() const { return verdict == Verdict::fails_exactly || verdict == Verdict::fails_at_depth; }
};

AxiomResult is_T0(const Truncation& t);
AxiomResult is_T1(const Truncation& t);
/// Failure is reported only from the exact locally-closed oracle or when the
/// whole space is visible; otherwise an unwitnessed point is inconclusive.
AxiomResult is_TD(const Truncation& t);
AxiomResult is_T2(const Truncation& t);

/// {x} = B(x, all visible) ∩ Cl({x}) among the visible points of the window.
bool singleton_locally_closed_at_depth(const Order& o, Point x);

/// witness = {x, basic index} on failure.
AxiomResult is_perfect(const Truncation& t);

/// Visible points with no other visible point above them.
PointSet max_points(const Order& o);
PointSet max_points(const Truncation& t);

/// x ◁ B_u at depth: every visible basic V containing x meets every visible
/// non-empty basic W ⊆ B_u. A necessary condition; true may become false at
/// a larger depth.
bool triangle_rel(const Truncation& t, Point x, std::size_t u);
/// D(X) at depth: points x with x ◁ B_u for some visible u.
PointSet d_set(const Truncation& t);

/// Exact sobriety of a finite space by enumeration of its closed sets.
bool is_sober(const FiniteSpace& fs);

struct SoberEvidence {
  bool nonsober = false;
  /// Irreducible-at-depth closed set without a certified generic point.
  PointSet closed;
};

/// Generic points are trusted only on resolved points of the window, or
/// when the space certifies them through its oracle.
SoberEvidence sober_evidence(const Truncation& t);

/// C is irreducible at depth: non-empty, and any two visible basics meeting
/// C meet each other inside C.
bool irreducible_at_depth(const Truncation& t, const PointSet& c);

}  // namespace qpolish
