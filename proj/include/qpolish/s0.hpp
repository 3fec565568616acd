#pragma once

#include "qpolish/extractors.hpp"
#include "qpolish/seqnat.hpp"

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qpolish {

/// A closed subset of S0 given by finite data: ⋂_j Cl(F_j) with
/// Cl(F) = ⋃_{p∈F} ↑p in the prefix order.
///
/// Text form: cl{(0),(1,2)} or meet[cl{(0)}; cl{(0,1),()}].
class S0ClosedSet {
 public:
  enum class Kind { closure_of_finite, intersection };

  static S0ClosedSet closure_of(std::vector<SeqNat> f);
  /// Intersection of the parts; nested intersections are flattened.
  static S0ClosedSet intersection(const std::vector<S0ClosedSet>& parts);

  Kind kind() const { return kind_; }
  /// The finite sets F_j.
  const std::vector<std::vector<SeqNat>>& generators() const { return gens_; }

  bool contains(const SeqNat& s) const;
  /// Members of rank < depth, by increasing rank.
  std::vector<SeqNat> visible(std::size_t depth) const;

  std::string str() const;
  static S0ClosedSet parse(std::string_view text);

 private:
  Kind kind_ = Kind::closure_of_finite;
  std::vector<std::vector<SeqNat>> gens_;
};

/// A union of basic opens S0 ∖ Cl(F_j).
///
/// Text form: co{(1)} or join[co{(1)}; co{(0,0),(2)}]; co{} is all of S0.
class S0Open {
 public:
  static S0Open complement_of(std::vector<SeqNat> f);
  static S0Open join(const std::vector<S0Open>& parts);

  const std::vector<std::vector<SeqNat>>& generators() const { return gens_; }
  bool contains(const SeqNat& s) const;

  std::string str() const;
  static S0Open parse(std::string_view text);

 private:
  std::vector<std::vector<SeqNat>> gens_;
};

/// Basic open i of S0: the complement of Cl(F_i), F_i the sequences whose
/// ranks are the 1-bits of i.
bool s0_in_basic(const SeqNat& s, std::size_t i);

struct Decomposition {
  std::vector<SeqNat> d;
  std::vector<Check> checks;
};

/// D = prefix-minimal visible members of A (the specialization-maximal ones),
/// with the checks "D_antichain", "D_discrete" and "A_equals_Cl_D".
Decomposition s0_closed_decompose(const S0ClosedSet& a, std::size_t depth);

/// U is dense in A at depth: every basic of index < depth that meets the
/// visible part of A meets it inside U.
bool dense_in_at_depth(const S0Open& u, const S0ClosedSet& a, std::size_t depth);

/// Whether every listed open contains every element of D. Throws
/// PreconditionError when a listed open is not dense in A at depth.
bool s0_baire_check(const S0ClosedSet& a, const std::vector<S0Open>& dense_opens, std::size_t depth);

/// count opens S0 ∖ Cl(F), F a random set of at most 3 visible sequences,
/// each dense in A at depth. Candidates that are not dense are redrawn.
std::vector<S0Open> random_dense_opens(const S0ClosedSet& a, std::size_t count, std::mt19937_64& rng,
                                       std::size_t depth);

/// Two distinct immediate successors x⋄k of x (least k first, rank < depth)
/// that lie in U ∩ A, so {x} ≠ U ∩ A. Throws PreconditionError when x is not
/// visibly in U ∩ A and Inconclusive when the depth shows fewer than two.
std::vector<SeqNat> not_locally_closed_certificate(const SeqNat& x, const S0Open& u, const S0ClosedSet& a,
                                                   std::size_t depth);

/// F^p_n = {0^m ⋄ (p(m)+1) | m <= n} ∪ {0^{n+1}}.
std::vector<SeqNat> ap_generator(const SeqNat& p, std::size_t n);

/// ⋂_{n<|p|} Cl(F^p_n). Its members are ⋃_{n<|p|} ↑(0^n ⋄ (p(n)+1)) together
/// with ↑0^{|p|}.
S0ClosedSet ap_injection(const SeqNat& p);

/// 0^n ⋄ (p(n)+1) for the first position n where p and q differ, checked to
/// lie in A_p and not in A_q. Throws PreconditionError when the prefixes
/// agree on their overlap and Inconclusive when the point's rank is not
/// below depth.
SeqNat ap_distinguish(const SeqNat& p, const SeqNat& q, std::size_t depth);

}  // namespace qpolish
