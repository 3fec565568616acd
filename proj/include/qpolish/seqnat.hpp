#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qpolish {

using Nat = std::uint64_t;

/// Cantor pairing: pair(a, b) = (a+b)(a+b+1)/2 + b. Throws overflow_error
/// past 64 bits.
Nat cantor_pair(Nat a, Nat b);

/// Inverse of cantor_pair.
std::pair<Nat, Nat> cantor_unpair(Nat z);

/// Positions of the 1-bits of i, in increasing order. This is the canonical
/// enumeration of finite subsets of naturals used for basic-open indexing.
std::vector<Nat> finite_set_of(Nat i);

/// A finite sequence of naturals (an element of omega^{<omega}).
class SeqNat {
 public:
  SeqNat() = default;
  explicit SeqNat(std::vector<Nat> entries) : entries_(std::move(entries)) {}
  SeqNat(std::initializer_list<Nat> entries) : entries_(entries) {}

  const std::vector<Nat>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Nat operator[](std::size_t i) const { return entries_[i]; }

  /// sigma ⋄ n
  SeqNat extended(Nat n) const;
  /// Drops the last entry. Precondition: non-empty.
  SeqNat parent() const;

  /// Prefix relation: *this ⪯ other.
  bool is_prefix_of(const SeqNat& other) const;

  /// rank(ε) = 0, rank(σ⋄n) = pair(rank(σ), n) + 1. Throws overflow_error
  /// when the rank does not fit in 64 bits.
  Nat rank() const;
  static SeqNat unrank(Nat r);

  /// Literal syntax "(a,b,c)"; "()" is ε.
  std::string str() const;
  static SeqNat parse(std::string_view text);

  friend bool operator==(const SeqNat&, const SeqNat&) = default;
  friend auto operator<=>(const SeqNat&, const SeqNat&) = default;

 private:
  std::vector<Nat> entries_;
};

std::ostream& operator<<(std::ostream& os, const SeqNat& s);

/// 0^m ⋄ k
SeqNat zeros_then(std::size_t m, Nat k);
/// 0^m
SeqNat zeros(std::size_t m);

}  // namespace qpolish
