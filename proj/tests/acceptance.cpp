// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "qpolish/derivative.hpp"
#include "qpolish/extractors.hpp"
#include "qpolish/s0.hpp"
#include "support.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace qpolish;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Run {
  int exit_code = -1;
  std::string out;
  double seconds = 0;
};

/// Every structured CLI invocation, for the determinism criterion.
std::vector<std::pair<std::string, std::string>> cli_log;

Run cli(const std::string& args) {
  const std::string cmd = std::string(QPOLISH_CLI) + " " + args + " 2>&1";
  const auto start = Clock::now();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = seconds_since(start);
  cli_log.emplace_back(args, r.out);
  return r;
}

std::string space(const std::string& name) { return std::string(QPOLISH_SPACES) + "/" + name + ".space"; }

std::string result_line(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (line.rfind("RESULT ", 0) == 0) last = line.substr(7);
  }
  return last;
}

bool no_failed_check(const std::string& out) { return out.find(" FAIL\n") == std::string::npos; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << o.detail << ")"
            << std::endl;
}

Outcome derivative_rank() {
  std::ostringstream d;
  bool ok = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    const Run r = cli("derive " + space("omega_lt_" + std::to_string(n)) + " --depth 512 --format structured");
    const bool good = r.exit_code == 0 && result_line(r.out) == "rank=" + std::to_string(n) && r.seconds < 5;
    ok = ok && good;
    d << "n=" << n << ":" << result_line(r.out) << "," << static_cast<int>(r.seconds * 1000) << "ms ";
  }
  return {ok, d.str()};
}

Outcome finite_exhaustive() {
  const auto start = Clock::now();
  std::size_t spaces = 0, disagreements = 0;
  std::map<std::size_t, std::size_t> per_size;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& rel : oracle::labeled_posets(n)) {
      ++spaces;
      ++per_size[n];
      const oracle::Topology top = oracle::alexandrov(rel);
      const FiniteSpace fs = FiniteSpace::from_preorder(rel);
      const Truncation t(make_finite(fs), 8);
      const bool td = is_TD(t).verdict == Verdict::holds_exactly;
      const bool sober = is_sober(fs);
      const OrdinalValue r = rank(t, 8).value;
      const bool d3 = delta3_condition(t, 8).verdict == Verdict::holds_exactly;
      const OrdinalValue want_rank = OrdinalValue::finite(n == 0 ? 0 : 1);
      const bool library_ok = td && sober && r == want_rank && d3;
      const bool oracle_ok = oracle::is_TD(top) && oracle::is_sober(top) && oracle::delta3_condition(top) &&
                             oracle::scattered_rank(top) == want_rank.n;
      if (!library_ok || !oracle_ok) ++disagreements;
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << spaces << " spaces, " << per_size[4] << " on 4 points, " << disagreements << " disagreements, " << secs << "s";
  return {disagreements == 0 && per_size[4] == 219 && secs < 60, d.str()};
}

Outcome canonical_classification() {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"sd", "SD"},
      {"s1", "S1"},
      {"s2", "S2"},
      {"s0", "S0"},
      {"omega_lt_1", "quasi_polish_evidence"},
      {"omega_lt_2", "quasi_polish_evidence"},
      {"omega_lt_3", "quasi_polish_evidence"},
      {"omega_lt_4", "quasi_polish_evidence"}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [file, tag] : cases) {
    const Run r = cli("classify " + space(file) + " --depth 128 --format structured");
    const bool good = r.exit_code == 0 && result_line(r.out) == tag && no_failed_check(r.out) && r.seconds < 30;
    ok = ok && good;
    d << file << "->" << result_line(r.out) << " ";
  }
  return {ok, d.str()};
}

Outcome s0_fidelity() {
  const Truncation t(make_S0(), 128);
  const ExtractionReport r = certify(extract_S0(t, 20, 100000));
  std::size_t pairs = 0, violations = 0;
  for (const auto& [sigma, x] : r.s0_map) {
    for (const auto& [tau, y] : r.s0_map) {
      ++pairs;
      const SpecializationAnswer a = leq(t, x, y);
      const bool by_prefix = SeqNat::unrank(y).is_prefix_of(SeqNat::unrank(x));
      const bool want = tau.is_prefix_of(sigma);
      if (a.certainty != Certainty::exact || a.related != want || by_prefix != want) ++violations;
    }
  }
  std::size_t ranks = 0;
  for (const auto& [sigma, x] : r.s0_map) ranks += sigma.rank() <= 20;
  std::ostringstream d;
  d << r.s0_map.size() << " sequences of rank <= 20, " << pairs << " pairs, " << violations << " violations";
  return {r.tag == tags::S0 && ranks == 21 && r.s0_map.size() == 21 && violations == 0, d.str()};
}

Outcome baire_invariants() {
  const auto start = Clock::now();
  const std::size_t depth = 256, count = 32;
  const Truncation t(make_S2(), depth);
  std::vector<OpenDescriptor> opens;
  for (Point p : t.universe()) opens.push_back(OpenDescriptor::punctured_at(p));
  const ExtractionReport r = certify(baire_witness(t, opens, count));
  const std::vector<Point>& y = r.points;
  const Space& s2 = t.space();
  bool ok = r.tag == tags::perfect_TD_Pi2 && y.size() == count;

  // Cl({x_j}) ∩ Y is finite, and every x_n in it has n <= m_j, the least i
  // with x_j outside U_i. With U_i = X ∖ {i}, m_j = x_j.
  bool closure_bound = true;
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (std::size_t n = 0; n < y.size(); ++n) {
      if (*s2.exact_leq(y[n], y[j]) && n > y[j]) closure_bound = false;
    }
  }

  // x_j is not isolated in Y by any basic of index <= N_j, where N_j is the
  // last n with f(n) = j whose successor x_{n+1} was emitted.
  auto unpair_left = [](std::size_t z) {
    std::size_t w = 0;
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    return w - (z - w * (w + 1) / 2);
  };
  bool perfect = true;
  std::size_t tested = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::size_t bound = npos;
    for (std::size_t n = 0; n + 1 < y.size(); ++n) {
      if (std::min(unpair_left(n), n) == j) bound = n;
    }
    if (bound == npos) continue;
    ++tested;
    for (std::size_t b = 0; b <= bound && b < depth; ++b) {
      if (!s2.in_basic(y[j], b)) continue;
      bool other = false;
      for (std::size_t k = 0; k < y.size(); ++k) other = other || (k != j && s2.in_basic(y[k], b));
      if (!other) perfect = false;
    }
  }

  // ⋂_n A_n, A_n = {x_0..x_min(n,count-1)} ∪ (X ∖ {0..n}), on visible points
  bool presentation = true;
  for (Point p = 0; p < depth; ++p) {
    bool in_all = true;
    for (std::size_t n = 0; n < depth && in_all; ++n) {
      bool in_a = p > n;
      for (std::size_t k = 0; k <= std::min(n, count - 1); ++k) in_a = in_a || y[k] == p;
      in_all = in_a;
    }
    const bool in_y = std::find(y.begin(), y.end(), p) != y.end();
    if (in_all != in_y) presentation = false;
  }
  const double secs = seconds_since(start);

  const Run cli_run = cli("witness baire " + space("s2_punctured") + " --count 32 --format structured");
  const bool cli_ok = cli_run.exit_code == 0 && result_line(cli_run.out) == "perfect_TD_Pi2";

  ok = ok && closure_bound && perfect && presentation && secs < 10 && cli_ok;
  std::ostringstream d;
  d << "closure bound " << closure_bound << ", not isolated " << perfect << " on " << tested << " points, Pi2 "
    << presentation << ", cli " << result_line(cli_run.out) << ", " << secs << "s";
  return {ok, d.str()};
}

Outcome sobriety() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& [inner, tag] : std::vector<std::pair<SpacePtr, std::string>>{{make_S1(), "S1"}, {make_SD(), "SD"}}) {
    const Truncation t(make_plus_generic(inner), 128);
    const ExtractionReport r = certify(sober_witness(t, 16));
    bool trace = false;
    for (const auto& c : r.checks) trace = trace || (c.name == "no_infinite_T2_trace" && c.pass);
    // independent: inner points, and the order among them is a chain (SD) or trivial (S1)
    bool shape = r.points.size() >= 3;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      for (std::size_t k = 0; k < r.points.size(); ++k) {
        const Point a = r.points[i] - 1, b = r.points[k] - 1;
        const bool rel = *inner->exact_leq(a, b);
        if (tag == "S1" && i != k && rel) shape = false;
        if (tag == "SD" && i < k && !rel) shape = false;
      }
    }
    const Run run = cli("witness sober " + space(tag == "S1" ? "s1_generic" : "sd_generic") +
                        " --depth 128 --format structured");
    const bool good = r.tag == tag && trace && shape && result_line(run.out) == tag && run.exit_code == 0;
    ok = ok && good;
    d << "plus_generic(" << tag << ")->" << r.tag << " with " << r.points.size() << " points ";
  }
  return {ok, d.str()};
}

Outcome uncountability() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_int_distribution<Nat> entry(0, 8);
  std::size_t ok = 0, total = 0;
  while (total < 200) {
    std::vector<Nat> a(len(rng)), b(len(rng));
    for (auto& v : a) v = entry(rng);
    for (auto& v : b) v = entry(rng);
    bool differ = false;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) differ = differ || a[i] != b[i];
    if (!differ) continue;
    ++total;
    const SeqNat p(a), q(b);
    std::size_t n = 0;
    while (p[n] == q[n]) ++n;
    const std::size_t depth = zeros_then(n, p[n] + 1).rank() + 1;
    const SeqNat w = ap_distinguish(p, q, depth);
    if (oracle::in_ap_union(p, w) && !oracle::in_ap_union(q, w)) ++ok;
  }
  std::ostringstream d;
  d << ok << "/" << total << " pairs distinguished";
  return {ok == total, d.str()};
}

Outcome decomposition() {
  std::mt19937_64 rng(77);
  std::size_t agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SeqNat> f;
    for (std::size_t k = 1 + rng() % 8; k > 0; --k) f.push_back(SeqNat::unrank(rng() % 128));
    const S0ClosedSet a = S0ClosedSet::closure_of(f);
    const Decomposition d = s0_closed_decompose(a, 128);
    std::vector<SeqNat> visible;
    for (Nat r = 0; r < 128; ++r) {
      const SeqNat s = SeqNat::unrank(r);
      for (const auto& g : f) {
        if (g.is_prefix_of(s)) {
          visible.push_back(s);
          break;
        }
      }
    }
    const std::set<SeqNat> got(d.d.begin(), d.d.end());
    bool checks = !d.checks.empty();
    for (const auto& c : d.checks) checks = checks && c.pass;
    if (got == oracle::prefix_minimal(visible) && checks) ++agree;
  }
  std::ostringstream d;
  d << agree << "/100 closed sets";
  return {agree == 100, d.str()};
}

Outcome borel_oracle() {
  std::mt19937_64 rng(99);
  std::size_t agree = 0;
  std::map<int, std::size_t> by_level;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto rel = oracle::random_preorder(n, rng);
    const oracle::Topology top = oracle::alexandrov(rel);
    const Truncation t(make_finite(FiniteSpace::from_preorder(rel)), 8);
    BorelExpr e = BorelExpr::empty();
    do {
      e = oracle::random_expr(rng, n + 1, 1 + static_cast<int>(rng() % 3), 6);
    } while (e.size() > 6);
    ++by_level[e.level().sigma_rank() > 3 ? 3 : e.level().n];
    const Mask want = oracle::evaluate(e, oracle::presented_basics(top), n);
    bool same = true;
    for (Point x = 0; x < n; ++x) same = same && eval(e, t, x) == oracle::has(want, x);
    agree += same;
  }
  std::ostringstream d;
  d << agree << "/500 expressions, levels 1/2/3: " << by_level[1] << "/" << by_level[2] << "/" << by_level[3];
  return {agree == 500 && by_level[1] > 0 && by_level[2] > 0 && by_level[3] > 0, d.str()};
}

Outcome cover_interior() {
  std::mt19937_64 rng(5150);
  std::size_t good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto rel = oracle::random_poset(n, rng);
    const oracle::Topology top = oracle::alexandrov(rel);
    const FiniteSpace fs = FiniteSpace::from_preorder(rel);
    const auto basics = oracle::presented_basics(top);
    std::uniform_int_distribution<std::size_t> pick(0, n);
    auto side = [&]() { return rng() % 2 ? BorelExpr::basic(pick(rng)) : BorelExpr::meet({pick(rng), pick(rng)}); };
    std::vector<BorelExpr> cover;
    Mask covered = 0;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      cover.push_back(BorelExpr::sigma(2, {{side(), side()}, {side(), side()}}));
      covered |= oracle::evaluate(cover.back(), basics, n);
    }
    // the rest as a union of singletons {x} = ↑x ∖ (↑x ∖ Cl({x}))
    std::vector<std::pair<BorelExpr, BorelExpr>> rest;
    for (Point x = 0; x < n; ++x) {
      if (oracle::has(covered, x)) continue;
      std::vector<BorelExpr> above;
      for (Point y = 0; y < n; ++y) {
        if (y != x && rel[x][y]) above.push_back(BorelExpr::basic(y + 1));
      }
      rest.emplace_back(BorelExpr::basic(x + 1), BorelExpr::union_of(above));
    }
    if (!rest.empty()) cover.push_back(BorelExpr::sigma(2, rest));
    const CoverInterior ci = sigma2_cover_interior(fs, cover);
    const Mask set = oracle::evaluate(cover.at(ci.index), basics, n);
    if (top.interior(set) != 0) ++good;
  }
  std::ostringstream d;
  d << good << "/100 covers";
  return {good == 100, d.str()};
}

Outcome determinism() {
  const auto first = cli_log;
  std::size_t same = 0;
  for (const auto& [args, out] : first) {
    const Run again = cli(args);
    same += again.out == out;
  }
  std::ostringstream d;
  d << same << "/" << first.size() << " structured runs byte-identical";
  return {!first.empty() && same == first.size(), d.str()};
}

}  // namespace

int main() {
  report(1, "derivative rank of omega^{<n}", derivative_rank);
  report(2, "finite spaces on at most 4 points", finite_exhaustive);
  report(3, "canonical classification", canonical_classification);
  report(4, "S0 extraction fidelity", s0_fidelity);
  report(5, "Baire witness invariants", baire_invariants);
  report(6, "sobriety witness", sobriety);
  report(7, "uncountability injection", uncountability);
  report(8, "closed decomposition oracle", decomposition);
  report(9, "Borel evaluation oracle", borel_oracle);
  report(10, "Sigma2 cover interior", cover_interior);
  report(11, "CLI determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
