#include "qpolish/seqnat.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qpolish {

Nat cantor_pair(Nat a, Nat b) {
  const unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  const unsigned __int128 z = s * (s + 1) / 2 + b;
  if (z > std::numeric_limits<Nat>::max()) throw std::overflow_error("cantor_pair: result exceeds 64 bits");
  return static_cast<Nat>(z);
}

std::pair<Nat, Nat> cantor_unpair(Nat z) {
  auto w = static_cast<Nat>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  // floating point may be off by one for large z
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const Nat t = w * (w + 1) / 2;
  const Nat b = z - t;
  return {w - b, b};
}

std::vector<Nat> finite_set_of(Nat i) {
  std::vector<Nat> out;
  for (Nat bit = 0; i != 0; ++bit, i >>= 1) {
    if (i & 1U) out.push_back(bit);
  }
  return out;
}

SeqNat SeqNat::extended(Nat n) const {
  auto e = entries_;
  e.push_back(n);
  return SeqNat(std::move(e));
}

SeqNat SeqNat::parent() const {
  if (entries_.empty()) throw std::logic_error("parent of the empty sequence");
  return SeqNat(std::vector<Nat>(entries_.begin(), entries_.end() - 1));
}

bool SeqNat::is_prefix_of(const SeqNat& other) const {
  if (entries_.size() > other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != other.entries_[i]) return false;
  }
  return true;
}

Nat SeqNat::rank() const {
  Nat r = 0;
  for (Nat n : entries_) {
    r = cantor_pair(r, n);
    if (r == std::numeric_limits<Nat>::max()) throw std::overflow_error("sequence rank exceeds 64 bits");
    ++r;
  }
  return r;
}

SeqNat SeqNat::unrank(Nat r) {
  std::vector<Nat> rev;
  while (r != 0) {
    auto [a, n] = cantor_unpair(r - 1);
    rev.push_back(n);
    r = a;
  }
  return SeqNat(std::vector<Nat>(rev.rbegin(), rev.rend()));
}

std::string SeqNat::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

SeqNat SeqNat::parse(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '(') {
    throw std::invalid_argument("sequence literal must start with '(': " + std::string(text));
  }
  ++i;
  std::vector<Nat> entries;
  skip();
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    for (;;) {
      skip();
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw std::invalid_argument("expected a natural in sequence literal: " + std::string(text));
      }
      Nat v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<Nat>(text[i] - '0');
        ++i;
      }
      entries.push_back(v);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw std::invalid_argument("unterminated sequence literal: " + std::string(text));
    }
  }
  skip();
  if (i != text.size()) throw std::invalid_argument("trailing text after sequence literal: " + std::string(text));
  return SeqNat(std::move(entries));
}

std::ostream& operator<<(std::ostream& os, const SeqNat& s) { return os << s.str(); }

SeqNat zeros_then(std::size_t m, Nat k) {
  std::vector<Nat> e(m, 0);
  e.push_back(k);
  return SeqNat(std::move(e));
}

SeqNat zeros(std::size_t m) { return SeqNat(std::vector<Nat>(m, 0)); }

}  // namespace qpolish
