#include "qpolish/s0.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qpolish {

namespace {

bool in_closure(const std::vector<SeqNat>& f, const SeqNat& s) {
  return std::any_of(f.begin(), f.end(), [&](const SeqNat& p) { return p.is_prefix_of(s); });
}

std::string list_str(const std::vector<SeqNat>& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i].str();
  return out;
}

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

[[noreturn]] void syntax_error(const std::string& what, std::string_view text) {
  throw std::invalid_argument(what + " in '" + std::string(text) + "'");
}

/// "{(0),(1,2)}" -> sequences; the braces are included in `body`.
std::vector<SeqNat> parse_braced(const std::string& body, std::string_view text) {
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') syntax_error("expected {...}", text);
  std::vector<SeqNat> out;
  std::size_t i = 1;
  while (i + 1 < body.size()) {
    if (body[i] != '(') syntax_error("expected '(' at offset " + std::to_string(i), text);
    const std::size_t close = body.find(')', i);
    if (close == std::string::npos) syntax_error("unclosed '('", text);
    out.push_back(SeqNat::parse(body.substr(i, close - i + 1)));
    i = close + 1;
    if (i + 1 < body.size()) {
      if (body[i] != ',') syntax_error("expected ',' at offset " + std::to_string(i), text);
      ++i;
    }
  }
  return out;
}

/// "name[a; b]" -> {"a", "b"} split at top-level semicolons.
std::vector<std::string> parse_bracketed(const std::string& s, std::size_t open, std::string_view text) {
  if (s.back() != ']') syntax_error("expected ']' at the end", text);
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    const char c = s[i];
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == ';' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) items.push_back(cur);
  return items;
}

}  // namespace

S0ClosedSet S0ClosedSet::closure_of(std::vector<SeqNat> f) {
  S0ClosedSet out;
  out.kind_ = Kind::closure_of_finite;
  out.gens_.push_back(std::move(f));
  return out;
}

S0ClosedSet S0ClosedSet::intersection(const std::vector<S0ClosedSet>& parts) {
  S0ClosedSet out;
  out.kind_ = Kind::intersection;
  for (const auto& p : parts) out.gens_.insert(out.gens_.end(), p.gens_.begin(), p.gens_.end());
  return out;
}

bool S0ClosedSet::contains(const SeqNat& s) const {
  return std::all_of(gens_.begin(), gens_.end(), [&](const auto& f) { return in_closure(f, s); });
}

std::vector<SeqNat> S0ClosedSet::visible(std::size_t depth) const {
  std::vector<SeqNat> out;
  for (Nat r = 0; r < depth; ++r) {
    SeqNat s = SeqNat::unrank(r);
    if (contains(s)) out.push_back(std::move(s));
  }
  return out;
}

std::string S0ClosedSet::str() const {
  if (kind_ == Kind::closure_of_finite && gens_.size() == 1) return "cl{" + list_str(gens_[0]) + "}";
  std::string out = "meet[";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? "; " : "") + std::string("cl{") + list_str(gens_[i]) + "}";
  return out + "]";
}

S0ClosedSet S0ClosedSet::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.rfind("cl", 0) == 0) return closure_of(parse_braced(s.substr(2), text));
  if (s.rfind("meet[", 0) == 0) {
    std::vector<S0ClosedSet> parts;
    for (const auto& item : parse_bracketed(s, 4, text)) parts.push_back(parse(item));
    if (parts.empty()) syntax_error("meet[] needs at least one closed set", text);
    return intersection(parts);
  }
  syntax_error("expected cl{...} or meet[...]", text);
}

S0Open S0Open::complement_of(std::vector<SeqNat> f) {
  S0Open out;
  out.gens_.push_back(std::move(f));
  return out;
}

S0Open S0Open::join(const std::vector<S0Open>& parts) {
  S0Open out;
  for (const auto& p : parts) out.gens_.insert(out.gens_.end(), p.gens_.begin(), p.gens_.end());
  return out;
}

bool S0Open::contains(const SeqNat& s) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const auto& f) { return !in_closure(f, s); });
}

std::string S0Open::str() const {
  if (gens_.size() == 1) return "co{" + list_str(gens_[0]) + "}";
  std::string out = "join[";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? "; " : "") + std::string("co{") + list_str(gens_[i]) + "}";
  return out + "]";
}

S0Open S0Open::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.rfind("co", 0) == 0) return complement_of(parse_braced(s.substr(2), text));
  if (s.rfind("join[", 0) == 0) {
    std::vector<S0Open> parts;
    for (const auto& item : parse_bracketed(s, 4, text)) parts.push_back(parse(item));
    return join(parts);
  }
  syntax_error("expected co{...} or join[...]", text);
}

bool s0_in_basic(const SeqNat& s, std::size_t i) {
  for (Nat r : finite_set_of(i)) {
    if (SeqNat::unrank(r).is_prefix_of(s)) return false;
  }
  return true;
}

Decomposition s0_closed_decompose(const S0ClosedSet& a, std::size_t depth) {
  const std::vector<SeqNat> vis = a.visible(depth);
  if (vis.empty()) throw PreconditionError("A has no visible member at depth " + std::to_string(depth));
  Decomposition out;
  for (const auto& s : vis) {
    const bool minimal = std::none_of(vis.begin(), vis.end(), [&](const SeqNat& o) { return o != s && o.is_prefix_of(s); });
    if (minimal) out.d.push_back(s);
  }

  bool antichain = true;
  for (std::size_t i = 0; i < out.d.size(); ++i) {
    for (std::size_t j = 0; j < out.d.size(); ++j) {
      if (i != j && out.d[i].is_prefix_of(out.d[j])) antichain = false;
    }
  }
  out.checks.push_back({"D_antichain", antichain});

  // {d} = D ∖ Cl(D ∖ {d}): the open complement of Cl(D ∖ {d}) isolates d in D.
  bool discrete = true;
  for (std::size_t i = 0; i < out.d.size(); ++i) {
    std::vector<SeqNat> rest = out.d;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const S0Open around = S0Open::complement_of(rest);
    for (std::size_t j = 0; j < out.d.size(); ++j) {
      if (around.contains(out.d[j]) != (i == j)) discrete = false;
    }
  }
  out.checks.push_back({"D_discrete", discrete});
  out.checks.push_back({"A_equals_Cl_D", S0ClosedSet::closure_of(out.d).visible(depth) == vis});
  return out;
}

bool dense_in_at_depth(const S0Open& u, const S0ClosedSet& a, std::size_t depth) {
  const std::vector<SeqNat> vis = a.visible(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    bool meets = false;
    bool meets_in_u = false;
    for (const auto& s : vis) {
      if (!s0_in_basic(s, i)) continue;
      meets = true;
      if (u.contains(s)) {
        meets_in_u = true;
        break;
      }
    }
    if (meets && !meets_in_u) return false;
  }
  return true;
}

bool s0_baire_check(const S0ClosedSet& a, const std::vector<S0Open>& dense_opens, std::size_t depth) {
  for (std::size_t j = 0; j < dense_opens.size(); ++j) {
    if (!dense_in_at_depth(dense_opens[j], a, depth)) {
      throw PreconditionError("open " + std::to_string(j) + " " + dense_opens[j].str() + " is not dense in A at depth");
    }
  }
  const Decomposition dec = s0_closed_decompose(a, depth);
  for (const auto& u : dense_opens) {
    for (const auto& d : dec.d) {
      if (!u.contains(d)) return false;
    }
  }
  return true;
}

std::vector<S0Open> random_dense_opens(const S0ClosedSet& a, std::size_t count, std::mt19937_64& rng,
                                       std::size_t depth) {
  if (depth == 0) throw PreconditionError("depth must be positive");
  std::uniform_int_distribution<Nat> pick(0, depth - 1);
  std::uniform_int_distribution<std::size_t> size(0, 3);
  std::vector<S0Open> out;
  for (std::size_t attempts = 0; out.size() < count; ++attempts) {
    if (attempts > 1000 * (count + 1)) throw Inconclusive("no dense open found among random candidates");
    std::vector<SeqNat> f;
    for (std::size_t k = size(rng); k > 0; --k) f.push_back(SeqNat::unrank(pick(rng)));
    S0Open u = S0Open::complement_of(std::move(f));
    if (dense_in_at_depth(u, a, depth)) out.push_back(std::move(u));
  }
  return out;
}

std::vector<SeqNat> not_locally_closed_certificate(const SeqNat& x, const S0Open& u, const S0ClosedSet& a,
                                                   std::size_t depth) {
  if (x.rank() >= depth || !u.contains(x) || !a.contains(x)) {
    throw PreconditionError(x.str() + " is not visibly in U ∩ A");
  }
  std::vector<SeqNat> out;
  for (Nat k = 0; out.size() < 2; ++k) {
    const SeqNat s = x.extended(k);
    if (s.rank() >= depth) break;
    if (u.contains(s) && a.contains(s)) out.push_back(s);
  }
  if (out.size() < 2) {
    throw Inconclusive("depth " + std::to_string(depth) + " shows fewer than two successors of " + x.str() +
                       " in U ∩ A");
  }
  return out;
}

std::vector<SeqNat> ap_generator(const SeqNat& p, std::size_t n) {
  if (n >= p.length()) throw std::out_of_range("F^p_n needs n < |p|");
  std::vector<SeqNat> f;
  for (std::size_t m = 0; m <= n; ++m) f.push_back(zeros_then(m, p[m] + 1));
  f.push_back(zeros(n + 1));
  return f;
}

S0ClosedSet ap_injection(const SeqNat& p) {
  if (p.empty()) throw PreconditionError("the prefix of p must be non-empty");
  std::vector<S0ClosedSet> parts;
  for (std::size_t n = 0; n < p.length(); ++n) parts.push_back(S0ClosedSet::closure_of(ap_generator(p, n)));
  return S0ClosedSet::intersection(parts);
}

SeqNat ap_distinguish(const SeqNat& p, const SeqNat& q, std::size_t depth) {
  const std::size_t shared = std::min(p.length(), q.length());
  std::size_t n = 0;
  while (n < shared && p[n] == q[n]) ++n;
  if (n == shared) throw PreconditionError("the prefixes agree on their overlap");
  const SeqNat w = zeros_then(n, p[n] + 1);
  if (w.rank() >= depth) {
    throw Inconclusive("the distinguishing point " + w.str() + " has rank " + std::to_string(w.rank()) +
                       ", beyond depth " + std::to_string(depth));
  }
  if (!ap_injection(p).contains(w) || ap_injection(q).contains(w)) {
    throw std::logic_error("distinguishing point " + w.str() + " failed its membership check");
  }
  return w;
}

}  // namespace qpolish
