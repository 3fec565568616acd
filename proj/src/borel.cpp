#include "qpolish/borel.hpp"

#include <cctype>
#include <sstream>

namespace qpolish {

std::string Level::str() const {
  const char* name = cls == BorelClass::Sigma ? "Sigma" : cls == BorelClass::Pi ? "Pi" : "Delta";
  return name + std::to_string(n);
}

namespace {

void check_level_range(int n) {
  if (n < 1 || n > BorelExpr::max_level) throw LevelError("level " + std::to_string(n) + " outside 1.." + std::to_string(BorelExpr::max_level));
}

}  // namespace

BorelExpr BorelExpr::basic(std::size_t i) {
  return BorelExpr(std::make_shared<const Node>(Node{Kind::basic, {BorelClass::Sigma, 1}, {i}, {}, {}}));
}

BorelExpr BorelExpr::meet(std::vector<std::size_t> indices) {
  return BorelExpr(std::make_shared<const Node>(Node{Kind::meet, {BorelClass::Sigma, 1}, std::move(indices), {}, {}}));
}

BorelExpr BorelExpr::union_of(std::vector<BorelExpr> children) {
  for (const auto& c : children) {
    if (c.level().sigma_rank() > 1) throw LevelError("union of non-open component " + c.level().str());
  }
  return BorelExpr(std::make_shared<const Node>(Node{Kind::union_of, {BorelClass::Sigma, 1}, {}, std::move(children), {}}));
}

BorelExpr BorelExpr::sigma(int n, std::vector<std::pair<BorelExpr, BorelExpr>> pairs) {
  check_level_range(n);
  if (n == 1) throw LevelError("Sigma1 sets are unions of basics, not differences");
  for (const auto& [a, b] : pairs) {
    for (const BorelExpr* c : {&a, &b}) {
      if (c->level().sigma_rank() >= n) {
        throw LevelError("Sigma" + std::to_string(n) + " difference with component " + c->level().str());
      }
    }
  }
  return BorelExpr(std::make_shared<const Node>(Node{Kind::sigma, {BorelClass::Sigma, n}, {}, {}, std::move(pairs)}));
}

BorelExpr BorelExpr::pi(int n, std::vector<std::pair<BorelExpr, BorelExpr>> pairs) {
  return complement(sigma(n, std::move(pairs)));
}

BorelExpr BorelExpr::complement(BorelExpr e) {
  Level l = e.level();
  if (l.cls == BorelClass::Sigma) {
    l.cls = BorelClass::Pi;
  } else if (l.cls == BorelClass::Pi) {
    l.cls = BorelClass::Sigma;
  }
  return BorelExpr(std::make_shared<const Node>(Node{Kind::complement, l, {}, {std::move(e)}, {}}));
}

BorelExpr BorelExpr::delta(int n, BorelExpr sigma_part, BorelExpr pi_part) {
  check_level_range(n);
  if (sigma_part.level().sigma_rank() > n) throw LevelError("Delta" + std::to_string(n) + " with Sigma part " + sigma_part.level().str());
  if (pi_part.level().pi_rank() > n) throw LevelError("Delta" + std::to_string(n) + " with Pi part " + pi_part.level().str());
  return BorelExpr(std::make_shared<const Node>(
      Node{Kind::delta, {BorelClass::Delta, n}, {}, {std::move(sigma_part), std::move(pi_part)}, {}}));
}

std::size_t BorelExpr::size() const {
  std::size_t s = 1;
  for (const auto& c : children()) s += c.size();
  for (const auto& [a, b] : pairs()) s += 1 + a.size() + b.size();
  return s;
}

std::size_t BorelExpr::max_basic_index() const {
  std::size_t m = npos;
  auto take = [&m](std::size_t v) {
    if (v != npos && (m == npos || v > m)) m = v;
  };
  for (std::size_t i : indices()) take(i);
  for (const auto& c : children()) take(c.max_basic_index());
  for (const auto& [a, b] : pairs()) {
    take(a.max_basic_index());
    take(b.max_basic_index());
  }
  return m;
}

std::string BorelExpr::str() const {
  std::ostringstream os;
  auto list = [&os](const auto& items, auto&& each) {
    bool first = true;
    for (const auto& it : items) {
      if (!first) os << ',';
      first = false;
      each(it);
    }
  };
  auto pair_list = [&](const BorelExpr& s) {
    list(s.pairs(), [&os](const auto& p) { os << "diff(" << p.first.str() << ',' << p.second.str() << ')'; });
  };
  switch (kind()) {
    case Kind::basic:
      os << 'b' << indices()[0];
      break;
    case Kind::meet:
      os << "meet(";
      list(indices(), [&os](std::size_t i) { os << 'b' << i; });
      os << ')';
      break;
    case Kind::union_of:
      os << "union(";
      list(children(), [&os](const BorelExpr& c) { os << c.str(); });
      os << ')';
      break;
    case Kind::sigma:
      os << "sigma" << level().n << '(';
      pair_list(*this);
      os << ')';
      break;
    case Kind::complement: {
      const BorelExpr& c = children()[0];
      if (c.kind() == Kind::sigma) {
        os << "pi" << c.level().n << '(';
        pair_list(c);
        os << ')';
      } else {
        os << "not(" << c.str() << ')';
      }
      break;
    }
    case Kind::delta:
      os << "delta" << level().n << '(' << children()[0].str() << ',' << children()[1].str() << ')';
      break;
  }
  return os.str();
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BorelExpr parse() {
    BorelExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t basic_ref() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'b') {
      const std::string w = word();
      if (w == "basic") return number();
      if (w != "b") fail("expected a basic index");
    }
    return number();
  }

  template <typename F>
  void comma_list(F&& item) {
    expect('(');
    if (peek(')')) {
      ++pos_;
      return;
    }
    for (;;) {
      item();
      if (peek(',') || peek(';')) {
        ++pos_;
        continue;
      }
      expect(')');
      return;
    }
  }

  std::vector<std::pair<BorelExpr, BorelExpr>> items() {
    std::vector<std::pair<BorelExpr, BorelExpr>> out;
    comma_list([&] {
      skip_ws();
      const std::size_t save = pos_;
      if (word() == "diff") {
        expect('(');
        BorelExpr a = expr();
        if (!peek(',') && !peek(';')) fail("expected ',' in diff");
        ++pos_;
        BorelExpr b = expr();
        expect(')');
        out.emplace_back(std::move(a), std::move(b));
      } else {
        pos_ = save;
        out.emplace_back(expr(), BorelExpr::empty());
      }
    });
    return out;
  }

  BorelExpr expr() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string w = word();
    if (w.empty()) fail("expected an expression");
    if (w == "b" || w == "basic") return BorelExpr::basic(number());
    if (w == "meet") {
      std::vector<std::size_t> ks;
      comma_list([&] { ks.push_back(basic_ref()); });
      return BorelExpr::meet(std::move(ks));
    }
    if (w == "union") {
      std::vector<BorelExpr> cs;
      comma_list([&] { cs.push_back(expr()); });
      return BorelExpr::union_of(std::move(cs));
    }
    if (w == "not" || w == "complement") {
      expect('(');
      BorelExpr e = expr();
      expect(')');
      return BorelExpr::complement(std::move(e));
    }
    if (w == "sigma" || w == "pi" || w == "delta") {
      const int n = static_cast<int>(number());
      if (w == "delta") {
        expect('(');
        BorelExpr s = expr();
        if (!peek(',') && !peek(';')) fail("expected ',' in delta");
        ++pos_;
        BorelExpr p = expr();
        expect(')');
        return BorelExpr::delta(n, std::move(s), std::move(p));
      }
      auto ps = items();
      if (n == 1) {
        std::vector<BorelExpr> cs;
        for (auto& [a, b] : ps) {
          if (b.kind() != BorelExpr::Kind::union_of || !b.children().empty()) fail("sigma1/pi1 take no differences");
          cs.push_back(std::move(a));
        }
        BorelExpr u = BorelExpr::union_of(std::move(cs));
        return w == "sigma" ? u : BorelExpr::complement(std::move(u));
      }
      return w == "sigma" ? BorelExpr::sigma(n, std::move(ps)) : BorelExpr::pi(n, std::move(ps));
    }
    pos_ = start;
    fail("unknown operator '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BorelExpr parse_borel(std::string_view text) { return Parser(text).parse(); }

// --------------------------------------------------------------- evaluation

PointSet extension(const BorelExpr& e, const Truncation& t) {
  using Kind = BorelExpr::Kind;
  switch (e.kind()) {
    case Kind::basic:
      return basic_open(t, e.indices()[0]);
    case Kind::meet: {
      PointSet out = t.universe();
      for (std::size_t i : e.indices()) out &= basic_open(t, i);
      return out;
    }
    case Kind::union_of: {
      PointSet out = t.empty_set();
      for (const auto& c : e.children()) out |= extension(c, t);
      return out;
    }
    case Kind::sigma: {
      PointSet out = t.empty_set();
      for (const auto& [a, b] : e.pairs()) out |= extension(a, t) - extension(b, t);
      return out;
    }
    case Kind::complement:
      return t.universe() - extension(e.children()[0], t);
    case Kind::delta: {
      PointSet s = extension(e.children()[0], t);
      const PointSet p = extension(e.children()[1], t);
      if (!(s == p)) throw PreconditionError("Delta expression: Sigma and Pi parts differ at depth " + std::to_string(t.depth()));
      return s;
    }
  }
  return t.empty_set();
}

bool eval(const BorelExpr& e, const Truncation& t, Point x) {
  if (x >= t.depth()) throw std::out_of_range("eval point outside the truncation");
  return extension(e, t).contains(x);
}

// ------------------------------------------------------ finite constructions

SingletonWitness singleton_sigma2_witness(const FiniteSpace& fs, Point x) {
  if (x >= fs.point_count()) throw std::out_of_range("point outside the space");
  const Mask u = fs.minimal_open(x);
  const Mask v = u & ~fs.closure(mask_of(x));
  if ((u & ~v) != mask_of(x)) throw PreconditionError("singleton {" + std::to_string(x) + "} is not a difference of opens");
  return {u, v};
}

ProductSpace::ProductSpace(FiniteSpace factor) : factor_(std::move(factor)) {}

std::optional<std::size_t> ProductSpace::point_count() const {
  return factor_.point_count() * factor_.point_count();
}

std::optional<std::size_t> ProductSpace::basic_count() const {
  const std::size_t n = factor_.point_count();
  return rect(n, n) + 1;
}

std::size_t ProductSpace::rect(std::size_t i, std::size_t j) { return cantor_pair(i, j); }

std::size_t ProductSpace::full_depth() const { return std::max(*point_count(), *basic_count()); }

bool ProductSpace::in_basic(Point p, std::size_t idx) const {
  const std::size_t n = factor_.point_count();
  if (p >= n * n) return false;
  const auto [i, j] = cantor_unpair(idx);
  auto in_factor = [&](Point a, std::size_t b) { return b == 0 || (b <= n && mask_has(factor_.minimal_open(b - 1), a)); };
  return in_factor(p / n, i) && in_factor(p % n, j);
}

std::optional<bool> ProductSpace::exact_leq(Point x, Point y) const {
  const std::size_t n = factor_.point_count();
  return factor_.leq(x / n, y / n) && factor_.leq(x % n, y % n);
}

std::string ProductSpace::point_label(Point p) const {
  const std::size_t n = factor_.point_count();
  return "<" + std::to_string(p / n) + "," + std::to_string(p % n) + ">";
}

DiagonalWitness diagonal_sigma2(const FiniteSpace& fs) {
  DiagonalWitness w;
  w.product = std::make_shared<const ProductSpace>(fs);
  const std::size_t n = fs.point_count();
  std::vector<std::pair<BorelExpr, BorelExpr>> pairs;
  for (Point x = 0; x < n; ++x) {
    const SingletonWitness s = singleton_sigma2_witness(fs, x);
    // U_x is the minimal open of x, which is basic x+1 of the factor.
    std::vector<BorelExpr> strips;
    for (Point y = 0; y < n; ++y) {
      if (!mask_has(s.v, y)) continue;
      strips.push_back(BorelExpr::basic(ProductSpace::rect(y + 1, 0)));
      strips.push_back(BorelExpr::basic(ProductSpace::rect(0, y + 1)));
    }
    pairs.emplace_back(BorelExpr::basic(ProductSpace::rect(x + 1, x + 1)), BorelExpr::union_of(std::move(strips)));
  }
  w.expr = n == 0 ? BorelExpr::empty() : BorelExpr::sigma(2, std::move(pairs));
  const Truncation t(w.product, w.product->full_depth());
  PointSet diag = t.empty_set();
  for (Point x = 0; x < n; ++x) diag.insert(w.product->point_of(x, x));
  w.verified = extension(w.expr, t) == diag;
  return w;
}

CoverInterior sigma2_cover_interior(const FiniteSpace& fs, const std::vector<BorelExpr>& cover) {
  const std::size_t n = fs.point_count();
  if (n == 0) throw PreconditionError("the empty space has no non-empty interior");
  const Truncation t(make_finite(fs), n + 1);
  std::vector<PointSet> ext;
  PointSet all = t.empty_set();
  for (const auto& e : cover) {
    if (e.level().sigma_rank() > 2) throw LevelError("cover member of level " + e.level().str());
    ext.push_back(extension(e, t));
    all |= ext.back();
  }
  if (!(all == t.universe())) throw PreconditionError("the cover does not exhaust the space");
  for (std::size_t i = 0; i < ext.size(); ++i) {
    for (std::size_t b = 0; b < t.basic_count(); ++b) {
      if (!t.basic(b).empty() && t.basic(b).is_subset_of(ext[i])) {
        Mask m = 0;
        for (Point p : t.basic(b)) m |= mask_of(p);
        return {i, b, m};
      }
    }
  }
  throw std::logic_error("no member of a Sigma2 cover of a finite space has interior");
}

}  // namespace qpolish
