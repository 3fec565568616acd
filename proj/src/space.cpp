#include "qpolish/space.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace qpolish {

// ---------------------------------------------------------------- FiniteSpace

namespace {

void check_point_count(std::size_t n) {
  if (n > FiniteSpace::max_points) {
    throw std::invalid_argument("finite spaces are limited to " + std::to_string(FiniteSpace::max_points) +
                                " points");
  }
}

}  // namespace

FiniteSpace FiniteSpace::from_subbasis(std::size_t point_count, const std::vector<std::vector<Point>>& subbasis) {
  check_point_count(point_count);
  FiniteSpace fs;
  fs.n_ = point_count;
  std::vector<Mask> sub;
  for (const auto& s : subbasis) {
    Mask m = 0;
    for (Point p : s) {
      if (p >= point_count) {
        throw std::invalid_argument("subbasic member " + std::to_string(p) + " is not a point");
      }
      m |= mask_of(p);
    }
    sub.push_back(m);
  }
  // The minimal open of x is the intersection of all subbasics containing x
  // (the empty intersection being X).
  fs.up_.assign(point_count, fs.full());
  for (Point x = 0; x < point_count; ++x) {
    for (Mask m : sub) {
      if (mask_has(m, x)) fs.up_[x] &= m;
    }
  }
  return fs;
}

FiniteSpace FiniteSpace::from_opens(std::size_t point_count, const std::vector<Mask>& opens) {
  check_point_count(point_count);
  FiniteSpace fs;
  fs.n_ = point_count;
  const Mask all = fs.full();
  bool has_empty = false;
  bool has_full = false;
  for (Mask u : opens) {
    if ((u & ~all) != 0) throw std::invalid_argument("open set contains a non-point");
    has_empty = has_empty || u == 0;
    has_full = has_full || u == all;
  }
  if (!has_empty || !has_full) throw std::invalid_argument("open family must contain the empty set and the whole space");
  std::vector<Mask> sorted = opens;
  std::sort(sorted.begin(), sorted.end());
  auto member = [&](Mask m) { return std::binary_search(sorted.begin(), sorted.end(), m); };
  for (Mask a : sorted) {
    for (Mask b : sorted) {
      if (!member(a | b) || !member(a & b)) {
        throw std::invalid_argument("open family is not closed under union and intersection");
      }
    }
  }
  fs.up_.assign(point_count, all);
  for (Point x = 0; x < point_count; ++x) {
    for (Mask u : sorted) {
      if (mask_has(u, x)) fs.up_[x] &= u;
    }
  }
  return fs;
}

FiniteSpace FiniteSpace::from_preorder(const std::vector<std::vector<bool>>& leq) {
  check_point_count(leq.size());
  FiniteSpace fs;
  fs.n_ = leq.size();
  fs.up_.assign(fs.n_, 0);
  for (Point x = 0; x < fs.n_; ++x) {
    for (Point y = 0; y < fs.n_; ++y) {
      if (leq[x][y]) fs.up_[x] |= mask_of(y);
    }
  }
  return fs;
}

bool FiniteSpace::is_open(Mask m) const {
  for (Point x = 0; x < n_; ++x) {
    if (mask_has(m, x) && (up_[x] & ~m) != 0) return false;
  }
  return true;
}

Mask FiniteSpace::closure(Mask m) const {
  Mask out = 0;
  for (Point x = 0; x < n_; ++x) {
    if ((up_[x] & m) != 0) out |= mask_of(x);
  }
  return out;
}

Mask FiniteSpace::interior(Mask m) const {
  Mask out = 0;
  for (Point x = 0; x < n_; ++x) {
    if ((up_[x] & ~m) == 0) out |= mask_of(x);
  }
  return out;
}

std::vector<Mask> FiniteSpace::opens() const {
  if (n_ > 24) throw std::invalid_argument("open-set enumeration is limited to 24 points");
  std::vector<Mask> out;
  const Mask limit = Mask{1} << n_;
  for (Mask m = 0; m < limit; ++m) {
    if (is_open(m)) out.push_back(m);
  }
  return out;
}

// ------------------------------------------------------ FinitePresentedSpace

bool FinitePresentedSpace::in_basic(Point p, std::size_t i) const {
  if (p >= fs_.point_count()) return false;
  if (i == 0) return true;
  if (i - 1 >= fs_.point_count()) return false;
  return mask_has(fs_.minimal_open(i - 1), p);
}

std::optional<bool> FinitePresentedSpace::basic_is_empty(std::size_t i) const {
  if (i == 0) return fs_.point_count() == 0;
  return i - 1 >= fs_.point_count();
}

std::optional<bool> FinitePresentedSpace::in_every_nonempty_basic(Point p) const {
  for (Point x = 0; x < fs_.point_count(); ++x) {
    if (!mask_has(fs_.minimal_open(x), p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- TableSpace

TableSpace::TableSpace(std::vector<std::vector<bool>> rows, std::size_t subbasic_count)
    : rows_(std::move(rows)), subbasic_count_(subbasic_count) {
  for (const auto& r : rows_) {
    if (r.size() != subbasic_count_) throw std::invalid_argument("table row has the wrong number of columns");
  }
  if (subbasic_count_ >= 63) throw std::invalid_argument("table spaces are limited to 62 subbasics");
}

std::optional<std::size_t> TableSpace::basic_count() const { return std::size_t{1} << subbasic_count_; }

bool TableSpace::in_basic(Point p, std::size_t i) const {
  if (p >= rows_.size()) return false;
  if (i >= (std::size_t{1} << subbasic_count_)) return false;
  for (Nat s : finite_set_of(i)) {
    if (!rows_[p][s]) return false;
  }
  return true;
}

// ------------------------------------------------------------------ S1 / S2

bool S1Space::in_basic(Point p, std::size_t i) const {
  if (p >= 64) return true;
  return ((i >> p) & 1U) == 0;
}

namespace {

/// Rationals of height max(|num|, den) = h, by |value| and then positive first.
std::vector<Rational> rationals_of_height(std::int64_t h) {
  std::vector<Rational> out;
  for (std::int64_t den = 1; den <= h; ++den) {
    for (std::int64_t num = 0; num <= h; ++num) {
      if (std::max(num, den) != h || std::gcd(num, den) != 1) continue;
      out.push_back({num, den});
      if (num != 0) out.push_back({-num, den});
    }
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    const std::int64_t l = std::abs(a.num) * b.den;
    const std::int64_t r = std::abs(b.num) * a.den;
    if (l != r) return l < r;
    return a.num > b.num;
  });
  return out;
}

std::int64_t zigzag(std::uint64_t z) {
  return (z % 2 == 0) ? static_cast<std::int64_t>(z / 2) : -static_cast<std::int64_t>((z + 1) / 2);
}

}  // namespace

Rational S2Space::rational(Point p) {
  static std::mutex mu;
  static std::vector<Rational> table;
  static std::int64_t height = 0;
  const std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= p) {
    ++height;
    const auto more = rationals_of_height(height);
    table.insert(table.end(), more.begin(), more.end());
  }
  return table[p];
}

std::size_t S2Space::level_size(unsigned m) {
  return 2 * radius(m) * (std::size_t{1} << m) + 1;
}

S2Space::Ball S2Space::ball(std::size_t j) {
  if (j == 0) throw std::invalid_argument("basic 0 of S2 is the whole space, not a ball");
  std::size_t z = j - 1;
  unsigned m = 0;
  while (z >= level_size(m)) z -= level_size(m++);
  return {zigzag(z) - 1, m};
}

bool S2Space::in_basic(Point p, std::size_t i) const {
  if (i == 0) return true;
  const Ball bl = ball(i);
  const Rational q = rational(p);
  // k/2^m < q.num/q.den < (k+2)/2^m
  using boost::multiprecision::cpp_int;
  const cpp_int scaled = cpp_int(q.num) << bl.level;
  return cpp_int(bl.k) * q.den < scaled && scaled < cpp_int(bl.k + 2) * q.den;
}

std::string S2Space::point_label(Point p) const {
  const Rational q = rational(p);
  if (q.den == 1) return std::to_string(q.num);
  return std::to_string(q.num) + "/" + std::to_string(q.den);
}

// ----------------------------------------------------------------------- S0

namespace {

/// Whether seq lies in ⋃_{q∈F} ↑q for F = sequences of ranks in bits(i).
bool s0_in_closure_of_bits(const SeqNat& seq, std::size_t i) {
  for (Nat r : finite_set_of(i)) {
    if (SeqNat::unrank(r).is_prefix_of(seq)) return true;
  }
  return false;
}

}  // namespace

bool S0Space::in_basic(Point p, std::size_t i) const {
  if (i == 0) return true;
  return !s0_in_closure_of_bits(SeqNat::unrank(p), i);
}

std::optional<bool> S0Space::exact_leq(Point x, Point y) const {
  return SeqNat::unrank(y).is_prefix_of(SeqNat::unrank(x));
}

// ------------------------------------------------------------------ OmegaLt

OmegaLtSpace::OmegaLtSpace(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("omega_lt requires n >= 1");
}

std::optional<std::size_t> OmegaLtSpace::point_count() const {
  if (n_ == 1) return 1;
  return std::nullopt;
}

const SeqNat& OmegaLtSpace::sequence(Point p) const {
  std::lock_guard lock(mu_);
  if (n_ == 1 && p > 0) throw std::out_of_range("omega_lt(1) has a single point");
  while (seqs_.size() <= p) {
    SeqNat s = SeqNat::unrank(next_rank_++);
    if (s.length() < n_) seqs_.push_back(std::move(s));
  }
  return seqs_[p];
}

bool OmegaLtSpace::in_basic(Point p, std::size_t i) const {
  if (n_ == 1 && p > 0) return false;
  if (i == 0) return true;
  const SeqNat& s = sequence(p);
  for (Nat q : finite_set_of(i)) {
    if (n_ == 1 && q > 0) continue;
    if (sequence(q).is_prefix_of(s)) return false;
  }
  return true;
}

std::optional<bool> OmegaLtSpace::exact_leq(Point x, Point y) const {
  return sequence(y).is_prefix_of(sequence(x));
}

std::optional<bool> OmegaLtSpace::exact_locally_closed(Point x, std::size_t stage) const {
  return sequence(x).length() + 1 + stage == n_;
}

std::optional<bool> OmegaLtSpace::basic_is_finite(std::size_t i) const {
  if (n_ == 1) return true;
  return (i & 1U) != 0;
}

// ------------------------------------------------------------ DisjointUnion

DisjointUnionSpace::DisjointUnionSpace(std::vector<SpacePtr> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("disjoint union needs at least one part");
}

std::shared_ptr<DisjointUnionSpace> DisjointUnionSpace::omega_lt_family() {
  std::shared_ptr<DisjointUnionSpace> u(new DisjointUnionSpace());
  u->family_ = true;
  return u;
}

std::optional<std::size_t> DisjointUnionSpace::part_count() const {
  if (family_) return std::nullopt;
  return parts_.size();
}

SpacePtr DisjointUnionSpace::part(std::size_t m) const {
  if (!family_) {
    if (m >= parts_.size()) throw std::out_of_range("no such union part");
    return parts_[m];
  }
  std::lock_guard lock(mu_);
  while (family_parts_.size() <= m) family_parts_.push_back(make_omega_lt(family_parts_.size() + 1));
  return family_parts_[m];
}

std::optional<std::size_t> DisjointUnionSpace::part_size(std::size_t m) const {
  if (!family_ && m >= parts_.size()) return 0;
  return part(m)->point_count();
}

std::optional<std::size_t> DisjointUnionSpace::point_count() const {
  if (family_) return std::nullopt;
  std::size_t total = 0;
  for (const auto& p : parts_) {
    auto c = p->point_count();
    if (!c) return std::nullopt;
    total += *c;
  }
  return total;
}

std::pair<std::size_t, Point> DisjointUnionSpace::locate(Point p) const {
  if (auto total = point_count(); total && p >= *total) throw std::out_of_range("point outside the union");
  std::lock_guard lock(located_mu_);
  // Cantor order over (part, local), skipping missing locals.
  while (located_.size() <= p) {
    auto [m, local] = cantor_unpair(next_pair_++);
    auto sz = part_size(m);
    if (sz && local >= *sz) continue;
    located_.emplace_back(m, local);
  }
  return located_[p];
}

std::string DisjointUnionSpace::tag() const {
  if (family_) return "union(omega_lt *)";
  std::string s = "union[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ";";
    s += parts_[i]->tag();
  }
  return s + "]";
}

bool DisjointUnionSpace::in_basic(Point p, std::size_t i) const {
  if (i == 0) return true;
  auto [m, bi] = cantor_unpair(i - 1);
  if (!family_ && m >= parts_.size()) return false;
  auto [pm, local] = locate(p);
  return pm == m && part(m)->in_basic(local, bi);
}

std::optional<bool> DisjointUnionSpace::exact_leq(Point x, Point y) const {
  auto [mx, lx] = locate(x);
  auto [my, ly] = locate(y);
  if (mx != my) return false;
  return part(mx)->exact_leq(lx, ly);
}

std::optional<bool> DisjointUnionSpace::exact_stage_removes(std::size_t stage) const {
  if (family_) return true;
  bool any = false;
  for (const auto& part : parts_) {
    const std::optional<bool> r = part->exact_stage_removes(stage);
    if (!r) return std::nullopt;
    any = any || *r;
  }
  return any;
}

std::optional<bool> DisjointUnionSpace::exact_locally_closed(Point x, std::size_t stage) const {
  auto [m, local] = locate(x);
  return part(m)->exact_locally_closed(local, stage);
}

std::optional<bool> DisjointUnionSpace::basic_is_empty(std::size_t i) const {
  if (i == 0) return false;
  auto [m, bi] = cantor_unpair(i - 1);
  if (!family_ && m >= parts_.size()) return true;
  return part(m)->basic_is_empty(bi);
}

std::optional<bool> DisjointUnionSpace::basic_is_finite(std::size_t i) const {
  if (i == 0) {
    if (family_) return false;
    return point_count().has_value();
  }
  auto [m, bi] = cantor_unpair(i - 1);
  if (!family_ && m >= parts_.size()) return true;
  return part(m)->basic_is_finite(bi);
}

std::optional<bool> DisjointUnionSpace::in_every_nonempty_basic(Point p) const {
  if (family_ || parts_.size() > 1) return false;
  return parts_[0]->in_every_nonempty_basic(locate(p).second);
}

std::optional<bool> DisjointUnionSpace::exact_T2() const {
  if (family_) return false;
  bool all = true;
  for (const auto& p : parts_) {
    auto t = p->exact_T2();
    if (!t) return std::nullopt;
    all = all && *t;
  }
  return all;
}

std::string DisjointUnionSpace::point_label(Point p) const {
  auto [m, local] = locate(p);
  return std::to_string(m) + ":" + part(m)->point_label(local);
}

// -------------------------------------------------------------- PlusGeneric

std::optional<std::size_t> PlusGenericSpace::point_count() const {
  auto c = inner_->point_count();
  if (!c) return std::nullopt;
  return *c + 1;
}

bool PlusGenericSpace::in_basic(Point p, std::size_t i) const {
  if (p > 0) return inner_->in_basic(p - 1, i);
  if (auto empty = inner_->basic_is_empty(i)) return !*empty;
  if (auto c = inner_->point_count()) {
    for (Point q = 0; q < *c; ++q) {
      if (inner_->in_basic(q, i)) return true;
    }
    return false;
  }
  throw std::logic_error("plus_generic needs an emptiness oracle for the inner basics");
}

std::optional<bool> PlusGenericSpace::exact_leq(Point x, Point y) const {
  if (x == y || y == 0) return true;
  if (x == 0) return inner_->in_every_nonempty_basic(y - 1);
  return inner_->exact_leq(x - 1, y - 1);
}

std::optional<bool> PlusGenericSpace::in_every_nonempty_basic(Point p) const {
  if (p == 0) return true;
  return inner_->in_every_nonempty_basic(p - 1);
}

std::string PlusGenericSpace::point_label(Point p) const {
  if (p == 0) return "g";
  return inner_->point_label(p - 1);
}

// ---------------------------------------------------------------- factories

SpacePtr make_S0() { return std::make_shared<S0Space>(); }
SpacePtr make_S1() { return std::make_shared<S1Space>(); }
SpacePtr make_SD() { return std::make_shared<SDSpace>(); }
SpacePtr make_S2() { return std::make_shared<S2Space>(); }
SpacePtr make_omega_lt(std::size_t n) { return std::make_shared<OmegaLtSpace>(n); }
SpacePtr make_disjoint_union(std::vector<SpacePtr> parts) {
  return std::make_shared<DisjointUnionSpace>(std::move(parts));
}
SpacePtr make_omega_lt_family() { return DisjointUnionSpace::omega_lt_family(); }
SpacePtr make_plus_generic(SpacePtr inner) { return std::make_shared<PlusGenericSpace>(std::move(inner)); }
SpacePtr make_finite(FiniteSpace fs, std::string tag) {
  return std::make_shared<FinitePresentedSpace>(std::move(fs), std::move(tag));
}

namespace {

class GeneratorParser {
 public:
  explicit GeneratorParser(const std::string& text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) tokens_.push_back(cur);
      cur.clear();
    };
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else if (c == '[' || c == ']' || c == ';' || c == ',' || c == '*') {
        flush();
        tokens_.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    flush();
  }

  SpacePtr parse_all() {
    SpacePtr s = parse();
    if (pos_ != tokens_.size()) fail("unexpected token '" + tokens_[pos_] + "'");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw std::invalid_argument("generator: " + what); }

  const std::string& next() {
    if (pos_ >= tokens_.size()) fail("unexpected end of description");
    return tokens_[pos_++];
  }
  bool peek(const std::string& t) const { return pos_ < tokens_.size() && tokens_[pos_] == t; }

  SpacePtr parse() {
    const std::string tag = next();
    if (tag == "S0") return make_S0();
    if (tag == "S1") return make_S1();
    if (tag == "SD") return make_SD();
    if (tag == "S2") return make_S2();
    if (tag == "omega_lt") {
      const std::string n = next();
      char* end = nullptr;
      unsigned long v = std::strtoul(n.c_str(), &end, 10);
      if (end == n.c_str() || *end != '\0') fail("omega_lt expects a natural, got '" + n + "'");
      if (v == 0) fail("omega_lt with n = 0");
      return make_omega_lt(v);
    }
    if (tag == "plus_generic") return make_plus_generic(parse());
    if (tag == "union") {
      if (peek("omega_lt")) {
        ++pos_;
        if (next() != "*") fail("expected '*' after 'union omega_lt'");
        return make_omega_lt_family();
      }
      if (next() != "[") fail("expected '[' after 'union'");
      std::vector<SpacePtr> parts;
      parts.push_back(parse());
      while (peek(";") || peek(",")) {
        ++pos_;
        parts.push_back(parse());
      }
      if (next() != "]") fail("expected ']' closing union");
      return make_disjoint_union(std::move(parts));
    }
    fail("unknown generator tag '" + tag + "'");
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SpacePtr make_generator(const std::string& description) { return GeneratorParser(description).parse_all(); }

}  // namespace qpolish
