#pragma once

#include "qpolish/point_set.hpp"
#include "qpolish/seqnat.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpolish {

/// Raised when an operation's precondition does not hold for its input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of depth or budget before it could certify an answer.
/// This is distinct from a refutation.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Mask = std::uint64_t;

/// A finite topological space on points {0..n-1}, n <= 64, stored through
/// its minimal open neighbourhoods. The open family is recoverable as the
/// up-sets of the specialization preorder.
class FiniteSpace {
 public:
  static constexpr std::size_t max_points = 64;

  /// Topology generated by the subbasis: finite intersections, then unions,
  /// with the empty set and the whole space adjoined.
  static FiniteSpace from_subbasis(std::size_t point_count, const std::vector<std::vector<Point>>& subbasis);
  /// Validates closure under pairwise union and intersection.
  static FiniteSpace from_opens(std::size_t point_count, const std::vector<Mask>& opens);
  /// Alexandrov topology of a preorder: opens are the up-sets.
  /// leq[x][y] means x <= y.
  static FiniteSpace from_preorder(const std::vector<std::vector<bool>>& leq);

  std::size_t point_count() const { return n_; }
  Mask full() const { return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1); }
  /// Smallest open set containing x.
  Mask minimal_open(Point x) const { return up_[x]; }
  /// Specialization: x is in the closure of {y}.
  bool leq(Point x, Point y) const { return (up_[x] >> y) & 1U; }

  bool is_open(Mask m) const;
  Mask closure(Mask m) const;
  Mask interior(Mask m) const;
  /// Every open set, in increasing numeric order. Exponential in n.
  std::vector<Mask> opens() const;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> up_;
};

inline bool mask_has(Mask m, Point p) { return (m >> p) & 1U; }
inline Mask mask_of(Point p) { return Mask{1} << p; }

class DisjointUnionSpace;

/// A countable space presented by a basis membership oracle. Basic open 0 is
/// the whole space for every built-in presentation. All queries are total.
class Space {
 public:
  virtual ~Space() = default;

  virtual std::string tag() const = 0;
  /// nullopt when the point universe is infinite.
  virtual std::optional<std::size_t> point_count() const { return std::nullopt; }
  /// nullopt when infinitely many basic opens are enumerated.
  virtual std::optional<std::size_t> basic_count() const { return std::nullopt; }
  /// mem(point, basic index)
  virtual bool in_basic(Point p, std::size_t i) const = 0;

  /// Closed-form specialization order, when the presentation knows it.
  virtual std::optional<bool> exact_leq(Point, Point) const { return std::nullopt; }
  /// Whether {x} is locally closed in the stage-th locally-closed-singleton
  /// derivative of the space, given that x belongs to that stage.
  virtual std::optional<bool> exact_locally_closed(Point, std::size_t /*stage*/) const { return std::nullopt; }
  /// Whether the stage-th derivative of the whole space loses a point.
  virtual std::optional<bool> exact_stage_removes(std::size_t /*stage*/) const { return std::nullopt; }
  virtual std::optional<bool> basic_is_empty(std::size_t) const { return std::nullopt; }
  virtual std::optional<bool> basic_is_finite(std::size_t) const { return std::nullopt; }
  /// Whether p belongs to every non-empty basic open (so Cl({p}) is everything).
  virtual std::optional<bool> in_every_nonempty_basic(Point) const { return std::nullopt; }
  virtual std::optional<bool> exact_T2() const { return std::nullopt; }

  virtual std::string point_label(Point p) const { return std::to_string(p); }
  virtual const DisjointUnionSpace* as_disjoint_union() const { return nullptr; }
  /// Sequence carried by a point, for spaces whose points are sequences.
  virtual std::optional<SeqNat> point_sequence(Point) const { return std::nullopt; }
};

using SpacePtr = std::shared_ptr<const Space>;

/// FiniteSpace exposed through the presented interface with basis
/// {X} ∪ {minimal_open(x)}: basic 0 is X and basic x+1 is the minimal open of x.
class FinitePresentedSpace final : public Space {
 public:
  explicit FinitePresentedSpace(FiniteSpace fs, std::string tag = "finite")
      : fs_(std::move(fs)), tag_(std::move(tag)) {}
  const FiniteSpace& finite() const { return fs_; }

  std::string tag() const override { return tag_; }
  std::optional<std::size_t> point_count() const override { return fs_.point_count(); }
  std::optional<std::size_t> basic_count() const override { return fs_.point_count() + 1; }
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override { return fs_.leq(x, y); }
  std::optional<bool> basic_is_empty(std::size_t i) const override;
  std::optional<bool> basic_is_finite(std::size_t) const override { return true; }
  std::optional<bool> in_every_nonempty_basic(Point p) const override;

 private:
  FiniteSpace fs_;
  std::string tag_;
};

/// Explicit membership table: basis = all finite intersections of the
/// listed subbasics, basic k = ⋂ of the subbasics at the 1-bits of k.
class TableSpace final : public Space {
 public:
  /// rows[p][s] = mem(p, s)
  explicit TableSpace(std::vector<std::vector<bool>> rows, std::size_t subbasic_count);

  std::string tag() const override { return "table"; }
  std::optional<std::size_t> point_count() const override { return rows_.size(); }
  std::optional<std::size_t> basic_count() const override;
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> basic_is_finite(std::size_t) const override { return true; }

 private:
  std::vector<std::vector<bool>> rows_;
  std::size_t subbasic_count_;
};

/// omega with the Scott topology: B_i = ↑i.
class SDSpace final : public Space {
 public:
  std::string tag() const override { return "SD"; }
  bool in_basic(Point p, std::size_t i) const override { return p >= i; }
  std::optional<bool> exact_leq(Point x, Point y) const override { return x <= y; }
  std::optional<bool> exact_locally_closed(Point, std::size_t) const override { return true; }
  std::optional<bool> exact_stage_removes(std::size_t stage) const override { return stage == 0; }
  std::optional<bool> basic_is_empty(std::size_t) const override { return false; }
  std::optional<bool> basic_is_finite(std::size_t) const override { return false; }
  std::optional<bool> in_every_nonempty_basic(Point) const override { return false; }
  std::optional<bool> exact_T2() const override { return false; }
};

/// omega with the cofinite topology: B_i = omega minus the i-th finite set.
class S1Space final : public Space {
 public:
  std::string tag() const override { return "S1"; }
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override { return x == y; }
  std::optional<bool> exact_locally_closed(Point, std::size_t) const override { return true; }
  std::optional<bool> exact_stage_removes(std::size_t stage) const override { return stage == 0; }
  std::optional<bool> basic_is_empty(std::size_t) const override { return false; }
  std::optional<bool> basic_is_finite(std::size_t) const override { return false; }
  std::optional<bool> in_every_nonempty_basic(Point) const override { return false; }
  std::optional<bool> exact_T2() const override { return false; }
};

/// A rational number num/den with den > 0, in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// The rationals with the Euclidean topology. Points are listed by height
/// max(|num|, den), and within a height by absolute value, positive first:
/// 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ...
/// Basic 0 is the whole space. The remaining basics are the dyadic balls
/// ((c-1)/2^m, (c+1)/2^m), level by level in m, with the centres c/2^m
/// covering [-R_m, R_m], R_m = 1 + floor(m/6), in the order c = 0, -1, 1, -2, ...
class S2Space final : public Space {
 public:
  static Rational rational(Point p);
  struct Ball {
    std::int64_t k;
    unsigned level;  // m
  };
  static Ball ball(std::size_t j);
  /// Number of balls of level m.
  static std::size_t level_size(unsigned m);
  static std::size_t radius(unsigned m) { return 1 + m / 6; }

  std::string tag() const override { return "S2"; }
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override { return x == y; }
  std::optional<bool> exact_locally_closed(Point, std::size_t) const override { return true; }
  std::optional<bool> exact_stage_removes(std::size_t stage) const override { return stage == 0; }
  std::optional<bool> basic_is_empty(std::size_t) const override { return false; }
  std::optional<bool> basic_is_finite(std::size_t) const override { return false; }
  std::optional<bool> in_every_nonempty_basic(Point) const override { return false; }
  std::optional<bool> exact_T2() const override { return true; }
  std::string point_label(Point p) const override;
};

/// omega^{<omega} with the lower topology of the prefix order. Point p is the
/// sequence of rank p. Basic i is the complement of Cl(F_i) = ⋃_{q∈F_i} ↑q
/// where F_i is the set of sequences whose ranks are the 1-bits of i.
class S0Space final : public Space {
 public:
  std::string tag() const override { return "S0"; }
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override;
  std::optional<bool> exact_locally_closed(Point, std::size_t) const override { return false; }
  std::optional<bool> exact_stage_removes(std::size_t) const override { return false; }
  std::optional<bool> basic_is_empty(std::size_t i) const override { return (i & 1U) != 0; }
  std::optional<bool> basic_is_finite(std::size_t i) const override { return (i & 1U) != 0; }
  std::optional<bool> in_every_nonempty_basic(Point p) const override { return p == 0; }
  std::optional<bool> exact_T2() const override { return false; }
  std::string point_label(Point p) const override { return SeqNat::unrank(p).str(); }
  std::optional<SeqNat> point_sequence(Point p) const override { return SeqNat::unrank(p); }
};

/// omega^{<n}: sequences of length < n with the topology generated by the
/// complements of ↑sigma. Points enumerate these sequences in increasing
/// rank order. Basic i is the complement of ⋃_{q∈F_i} ↑q, F_i the points at
/// the 1-bits of i.
class OmegaLtSpace final : public Space {
 public:
  explicit OmegaLtSpace(std::size_t n);
  std::size_t n() const { return n_; }
  const SeqNat& sequence(Point p) const;

  std::string tag() const override { return "omega_lt(" + std::to_string(n_) + ")"; }
  std::optional<std::size_t> point_count() const override;
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override;
  std::optional<bool> exact_locally_closed(Point x, std::size_t stage) const override;
  std::optional<bool> exact_stage_removes(std::size_t stage) const override { return stage < n_; }
  std::optional<bool> basic_is_empty(std::size_t i) const override { return (i & 1U) != 0; }
  std::optional<bool> basic_is_finite(std::size_t i) const override;
  std::optional<bool> in_every_nonempty_basic(Point p) const override { return p == 0; }
  std::optional<bool> exact_T2() const override { return n_ == 1; }
  std::string point_label(Point p) const override { return sequence(p).str(); }
  std::optional<SeqNat> point_sequence(Point p) const override { return sequence(p); }

 private:
  std::size_t n_;
  mutable std::mutex mu_;
  mutable std::vector<SeqNat> seqs_;
  mutable Nat next_rank_ = 0;
};

/// Disjoint union of a finite list of spaces, or of the infinite family
/// omega^{<1}, omega^{<2}, ... . Local pairs (part, local point) are
/// enumerated in Cantor-pairing order, skipping locals that do not exist.
/// Basic 0 is the whole space; basic j >= 1 is the part-local basic
/// (part, i) = unpair(j-1).
class DisjointUnionSpace final : public Space {
 public:
  explicit DisjointUnionSpace(std::vector<SpacePtr> parts);
  /// The family {omega^{<n}}_{n>=1}.
  static std::shared_ptr<DisjointUnionSpace> omega_lt_family();

  bool is_infinite_family() const { return family_; }
  std::optional<std::size_t> part_count() const;
  SpacePtr part(std::size_t m) const;
  /// (part, local point) of a union point.
  std::pair<std::size_t, Point> locate(Point p) const;

  std::string tag() const override;
  std::optional<std::size_t> point_count() const override;
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override;
  std::optional<bool> exact_locally_closed(Point x, std::size_t stage) const override;
  std::optional<bool> exact_stage_removes(std::size_t stage) const override;
  std::optional<bool> basic_is_empty(std::size_t i) const override;
  std::optional<bool> basic_is_finite(std::size_t i) const override;
  std::optional<bool> in_every_nonempty_basic(Point p) const override;
  std::optional<bool> exact_T2() const override;
  std::string point_label(Point p) const override;
  const DisjointUnionSpace* as_disjoint_union() const override { return this; }

 private:
  DisjointUnionSpace() = default;
  std::optional<std::size_t> part_size(std::size_t m) const;

  std::vector<SpacePtr> parts_;
  bool family_ = false;
  mutable std::mutex mu_;
  mutable std::vector<SpacePtr> family_parts_;
  mutable std::mutex located_mu_;
  mutable std::vector<std::pair<std::size_t, Point>> located_;
  mutable Nat next_pair_ = 0;
};

/// Adds one generic point g (index 0) lying in every non-empty basic open of
/// the inner space; inner point p becomes p+1. No new basics.
class PlusGenericSpace final : public Space {
 public:
  explicit PlusGenericSpace(SpacePtr inner) : inner_(std::move(inner)) {}
  const SpacePtr& inner() const { return inner_; }

  std::string tag() const override { return "plus_generic(" + inner_->tag() + ")"; }
  std::optional<std::size_t> point_count() const override;
  std::optional<std::size_t> basic_count() const override { return inner_->basic_count(); }
  bool in_basic(Point p, std::size_t i) const override;
  std::optional<bool> exact_leq(Point x, Point y) const override;
  std::optional<bool> basic_is_empty(std::size_t i) const override { return inner_->basic_is_empty(i); }
  std::optional<bool> basic_is_finite(std::size_t i) const override { return inner_->basic_is_finite(i); }
  std::optional<bool> in_every_nonempty_basic(Point p) const override;
  std::string point_label(Point p) const override;

 private:
  SpacePtr inner_;
};

SpacePtr make_S0();
SpacePtr make_S1();
SpacePtr make_SD();
SpacePtr make_S2();
SpacePtr make_omega_lt(std::size_t n);
SpacePtr make_disjoint_union(std::vector<SpacePtr> parts);
SpacePtr make_omega_lt_family();
SpacePtr make_plus_generic(SpacePtr inner);
SpacePtr make_finite(FiniteSpace fs, std::string tag = "finite");

/// Generator by textual tag: "S0", "S1", "SD", "S2", "omega_lt 3",
/// "union [ g ; g ; ... ]", "union omega_lt *", "plus_generic g".
SpacePtr make_generator(const std::string& description);

}  // namespace qpolish
