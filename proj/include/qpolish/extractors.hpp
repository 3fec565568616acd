#pragma once

#include "qpolish/derivative.hpp"
#include "qpolish/order.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qpolish {

namespace tags {
inline constexpr const char* SD = "SD";
inline constexpr const char* S1 = "S1";
inline constexpr const char* S2 = "S2";
inline constexpr const char* S0 = "S0";
inline constexpr const char* max_T1 = "maxT1_subspace";
inline constexpr const char* dense_family = "dense_open_family";
inline constexpr const char* sober = "sober_witness";
inline constexpr const char* perfect_TD_Pi2 = "perfect_TD_Pi2";
inline constexpr const char* quasi_polish = "quasi_polish_evidence";
}  // namespace tags

struct Check {
  std::string name;
  bool pass = false;
};

struct ExtractionReport {
  std::string tag;
  std::vector<Point> points;
  /// For tag S0: the extracted x_σ for each σ.
  std::vector<std::pair<SeqNat, Point>> s0_map;
  std::vector<Check> checks;
  std::size_t depth = 0;
  std::size_t steps_used = 0;
  /// Free-form facts about the run (stopping reasons, sub-results).
  std::vector<std::string> notes;

  bool passed() const;
  void check(std::string name, bool pass) { checks.push_back({std::move(name), pass}); }
};

/// A report whose own invariant checks did not all pass.
class CheckFailed : public Inconclusive {
 public:
  explicit CheckFailed(ExtractionReport r);
  const ExtractionReport& report() const { return report_; }

 private:
  ExtractionReport report_;
};

/// Returns r unchanged when every check passed, otherwise throws CheckFailed.
ExtractionReport certify(ExtractionReport r);

/// Either an ascending specialization chain of target_len points starting at
/// a resolved point below no certified maximal point (tag SD), or the visible
/// maximal points (tag maxT1_subspace).
ExtractionReport chain_or_max(const Truncation& t, std::size_t target_len);

/// x_0 in the interior of D, U_0 with x_0 ◁ U_0 ⊆ D, then
/// x_{n+1} ∈ V^n = ⋂_{i≤n} U_i ∩ B(x_i, n) and U_{n+1} ⊆ U_n with
/// x_{n+1} ◁ U_{n+1} ⊆ D; least indices throughout.
ExtractionReport extract_S1(const Truncation& t, std::size_t count);

/// Binary tree of points x_σ and basics U_σ with disjoint sibling basics
/// inside B(x_σ, |σ|) ∩ U_σ, for σ of length <= tree_height.
ExtractionReport extract_S2(const Truncation& t, std::size_t tree_height);

struct Budgets {
  std::size_t chain_len = 0;  // 0: a quarter of the depth, at least 4
  std::size_t s1_count = 16;
  std::size_t s2_height = 4;
  std::size_t rank_budget = 20;
  std::size_t step_budget = 100000;
  std::size_t max_steps = 64;
};

/// Chain or Max(X), then the S1 and S2 extractions in the order suggested by
/// whether D(X) has visible interior; the first certified report wins.
ExtractionReport classify_perfect_TD(const Truncation& t, const Budgets& b = {});

/// Closed and open parts (A_i, U_i) of a presentation Y = ⋂ (A_i ∪ U_i),
/// as visible extents.
using Pi2Presentation = std::vector<std::pair<PointSet, PointSet>>;

/// From a visible perfect T_D subspace Y with closure C: the dense open
/// families W_i = C ∖ Cl_C({y_i}) for resolved y_i and
/// V_i = (Int_C(A_i) ∪ U_i) ∩ C.
ExtractionReport dense_open_family(const Truncation& t, const PointSet& y, const Pi2Presentation& presentation = {});

/// An open set given intensionally, so density can be judged beyond the window.
struct OpenDescriptor {
  enum class Kind { punctured, basic_union };
  Kind kind = Kind::basic_union;
  Point point = 0;                  // punctured: X ∖ {point}
  std::vector<std::size_t> basics;  // basic_union
  static OpenDescriptor punctured_at(Point p) { return {Kind::punctured, p, {}}; }
  static OpenDescriptor union_of(std::vector<std::size_t> bs) { return {Kind::basic_union, 0, std::move(bs)}; }
  PointSet extent(const Truncation& t) const;
  std::string str() const;
};

/// Dense at depth: every non-empty visible basic meets the set, or is
/// certified infinite while the set is cofinite.
bool dense_at_depth(const Truncation& t, const OpenDescriptor& u);

/// x_{n+1} = least point of (B(x_f(n), n) ∖ Cl({x_f(n)})) ∩ U_0 ∩ ... ∩ U_n with
/// f(n) = min(unpair_left(n), n), preferring points not emitted yet. Emits
/// Y = {x_0, ..., x_{count-1}}.
ExtractionReport baire_witness(const Truncation& t, const std::vector<OpenDescriptor>& dense_opens, std::size_t count);

/// The ambient must be plus_generic(X) with the generic point at index 0.
/// Builds x_0, x_1, ... converging to the generic point and classifies them
/// as S1 or SD. Stops early, with a note, when the next exclusion basic lies
/// beyond the depth.
ExtractionReport sober_witness(const Truncation& t, std::size_t count);

/// The S0 embedding procedure with φ the identity enumeration of the window.
ExtractionReport extract_S0(const Truncation& t, std::size_t rank_budget, std::size_t step_budget);

/// Perfect T_D spaces go to classify_perfect_TD; otherwise a visible Δ3
/// derivative trace is quasi-Polish evidence; otherwise extract_S0.
ExtractionReport classify_countable(const Truncation& t, const Budgets& b = {});

}  // namespace qpolish
