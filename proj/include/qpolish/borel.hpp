#pragma once

#include "qpolish/truncation.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qpolish {

enum class BorelClass { Sigma, Pi, Delta };

struct Level {
  BorelClass cls = BorelClass::Sigma;
  int n = 1;
  /// Least k with the class contained in Sigma_k.
  int sigma_rank() const { return cls == BorelClass::Pi ? n + 1 : n; }
  /// Least k with the class contained in Pi_k.
  int pi_rank() const { return cls == BorelClass::Sigma ? n + 1 : n; }
  std::string str() const;
  friend bool operator==(const Level&, const Level&) = default;
};

/// A malformed expression: a component whose level is too high for the
/// node it sits in, or a level outside 1..3.
class LevelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite-level Borel expression over the basic opens of a space. Levels are
/// checked when a node is built, so every value is well formed.
///
///   basic(i)         B_i                                   Sigma1
///   meet(is)         B_i1 ∩ ... ∩ B_ik, meet({}) = X        Sigma1
///   union_of(es)     e1 ∪ ... ∪ ek, each ei Sigma1          Sigma1
///   sigma(n, ps)     ⋃ (A_i ∖ A'_i), components below n     Sigma_n
///   complement(e)    X ∖ e                                  dual class
///   delta(n, s, p)   s = p, s in Sigma_n and p in Pi_n      Delta_n
class BorelExpr {
 public:
  enum class Kind { basic, meet, union_of, sigma, complement, delta };
  static constexpr int max_level = 3;

  static BorelExpr basic(std::size_t i);
  static BorelExpr meet(std::vector<std::size_t> indices);
  static BorelExpr whole() { return meet({}); }
  static BorelExpr union_of(std::vector<BorelExpr> children);
  static BorelExpr empty() { return union_of({}); }
  static BorelExpr sigma(int n, std::vector<std::pair<BorelExpr, BorelExpr>> pairs);
  /// Pi_n set whose complement is sigma(n, pairs).
  static BorelExpr pi(int n, std::vector<std::pair<BorelExpr, BorelExpr>> pairs);
  static BorelExpr complement(BorelExpr e);
  static BorelExpr delta(int n, BorelExpr sigma_part, BorelExpr pi_part);

  Kind kind() const { return node_->kind; }
  Level level() const { return node_->level; }
  const std::vector<std::size_t>& indices() const { return node_->indices; }
  const std::vector<BorelExpr>& children() const { return node_->children; }
  const std::vector<std::pair<BorelExpr, BorelExpr>>& pairs() const { return node_->pairs; }

  /// Number of nodes, counting each difference pair as one node.
  std::size_t size() const;
  /// Largest basic index mentioned, or npos when none is.
  std::size_t max_basic_index() const;
  /// Text form accepted by parse_borel.
  std::string str() const;

 private:
  struct Node {
    Kind kind;
    Level level;
    std::vector<std::size_t> indices;
    std::vector<BorelExpr> children;
    std::vector<std::pair<BorelExpr, BorelExpr>> pairs;
  };
  explicit BorelExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar (whitespace-insensitive):
///   expr  := 'b' k | 'basic' k | 'meet(' ks ')' | 'union(' exprs ')'
///          | 'sigma' n '(' items ')' | 'pi' n '(' items ')'
///          | 'not(' expr ')' | 'delta' n '(' expr ',' expr ')'
///   item  := 'diff(' expr ',' expr ')' | expr        (e stands for e ∖ ∅)
/// sigma1(...) is the union of its Sigma1 items.
BorelExpr parse_borel(std::string_view text);

/// Extension of the expression inside the window. Throws out_of_range when a
/// basic index is not below the depth, and PreconditionError when the two
/// halves of a Delta node disagree on a visible point.
PointSet extension(const BorelExpr& e, const Truncation& t);
bool eval(const BorelExpr& e, const Truncation& t, Point x);

struct SingletonWitness {
  Mask u = 0;
  Mask v = 0;
};

/// {x} = U ∖ V with U the minimal open of x and V = U minus Cl({x}).
/// Throws PreconditionError when {x} is not of this form (a non-T0 space).
SingletonWitness singleton_sigma2_witness(const FiniteSpace& fs, Point x);

/// X × X for a finite X presented as in FinitePresentedSpace: point (a, b)
/// is a*n + b and basic pair(i, j) is the rectangle B_i × B_j.
class ProductSpace final : public Space {
 public:
  explicit ProductSpace(FiniteSpace factor);
  const FiniteSpace& factor() const { return factor_; }
  Point point_of(Point a, Point b) const { return a * factor_.point_count() + b; }

  std::string tag() const override { return "product"; }
  std::optional<std::size_t> point_count() const override;
  std::optional<std::size_t> basic_count() const override;
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override;
  std::string point_label(Point p) const override;

  /// Basic index of B_i × B_j.
  static std::size_t rect(std::size_t i, std::size_t j);
  /// Depth that shows every point and basic.
  std::size_t full_depth() const;

 private:
  FiniteSpace factor_;
};

struct DiagonalWitness {
  std::shared_ptr<const ProductSpace> product;
  BorelExpr expr = BorelExpr::empty();
  /// The expression evaluates to exactly the diagonal at full depth.
  bool verified = false;
};

/// Δ = ⋃_x (U_x ∖ V_x) × (U_x ∖ V_x) as a Sigma2 expression over X × X.
DiagonalWitness diagonal_sigma2(const FiniteSpace& fs);

struct CoverInterior {
  std::size_t index = 0;
  /// Basic index (in the finite presentation) of a non-empty basic inside A_index.
  std::size_t basic = 0;
  Mask open = 0;
};

/// Least i such that cover[i] has non-empty interior. Throws
/// PreconditionError when the cover does not exhaust the space.
CoverInterior sigma2_cover_interior(const FiniteSpace& fs, const std::vector<BorelExpr>& cover);

}  // namespace qpolish
