#pragma once

#include "qpolish/borel.hpp"
#include "qpolish/order.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qpolish {

struct OrdinalValue {
  enum class Shape { finite, omega_plus, did_not_stabilize };
  Shape shape = Shape::finite;
  std::size_t n = 0;

  static OrdinalValue finite(std::size_t n) { return {Shape::finite, n}; }
  static OrdinalValue omega_plus(std::size_t n) { return {Shape::omega_plus, n}; }
  static OrdinalValue did_not_stabilize(std::size_t steps) { return {Shape::did_not_stabilize, steps}; }
  /// "finite(4)", "omega_plus(0)", "did_not_stabilize(9)"
  std::string str() const;
  friend bool operator==(const OrdinalValue&, const OrdinalValue&) = default;
};

/// Why {x} was removed at a stage: the visible basic U (npos when none is
/// visible) and the visible relative closure C = Cl({x}) ∩ A, with
/// U ∩ C = {x} whenever U is present.
struct RemovalWitness {
  Point point = 0;
  std::size_t stage = 0;
  std::size_t basic = npos;
  PointSet closed;
  bool by_oracle = false;
};

struct DerivativeTrace {
  /// stages[0] = X ⊇ stages[1] ⊇ ...
  std::vector<PointSet> stages;
  std::vector<RemovalWitness> witnesses;
  /// Stage at which each removed point left, indexed by point (npos if never).
  std::vector<std::size_t> removed_at;
};

struct DeriveStep {
  PointSet next;
  std::vector<RemovalWitness> witnesses;
};

/// One derivative step on the subspace A. When `stage` is given, A is the
/// stage-th derivative of the whole space and the space has an exact
/// locally-closed oracle, the oracle decides; otherwise x is removed when
/// some visible basic U has U ∩ Cl_A({x}) ∩ A = {x}.
DeriveStep derive_once(const Order& o, const PointSet& a, std::optional<std::size_t> stage = std::nullopt);
DeriveStep derive_once(const Truncation& t, const PointSet& a, std::optional<std::size_t> stage = std::nullopt);

struct RankResult {
  OrdinalValue value;
  DerivativeTrace trace;
  /// For the infinite disjoint-union family: rank of each visible part,
  /// computed separately.
  std::vector<OrdinalValue> part_ranks;
};

/// Iterates derive_once from the whole window. finite(n) once stage n equals
/// stage n+1; omega_plus(0) for the disjoint union of all omega^{<n} by the
/// closed-form rule; did_not_stabilize(max_steps) otherwise. A visible stage
/// that stops changing while the space's oracle says the whole stage still
/// loses points gives did_not_stabilize(n) instead of finite(n).
RankResult rank(const Truncation& t, std::size_t max_steps);

struct Delta3Result {
  /// holds_exactly / holds_at_depth, fails_exactly (with a certified
  /// subspace having no locally closed point), or inconclusive.
  Verdict verdict = Verdict::inconclusive;
  PointSet subspace;
  OrdinalValue rank;
};

/// Every non-empty A has a point whose singleton is locally closed in A.
/// Finite visible spaces up to 16 points: exhaustive over subsets.
/// Otherwise the derivative trace: emptying the window is evidence that the
/// condition holds, and a non-empty fixed stage certified point by point by
/// the exact oracle refutes it.
Delta3Result delta3_condition(const Truncation& t, std::size_t max_steps);

struct Delta3Witness {
  BorelExpr expr = BorelExpr::empty();
  /// extension(expr) equals X on the visible points.
  bool verified = false;
  /// Stage of each enumerated point in the derivative of X.
  std::vector<std::size_t> stages;
  /// Pairs x_i ≰ x_k whose separating basic lies beyond the depth; the
  /// corresponding exclusion is dropped from V^i_j and only the extensional
  /// check vouches for the result.
  std::size_t unrealized_separations = 0;
};

/// The Pi3 set W = ⋂_j ⋃_i (Cl({x_i}) ∩ U_i ∩ V^i_j) for the subspace X of the
/// window, enumerated in increasing index order; j ranges below the depth.
/// Throws PreconditionError when the derivative of X does not empty, and
/// Inconclusive when a point has no visible isolating basic in its stage.
Delta3Witness delta3_witness(const Truncation& t, const PointSet& x_points, std::size_t max_steps);

}  // namespace qpolish
