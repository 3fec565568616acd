#include "qpolish/derivative.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qpolish;

TEST_CASE("rank of omega^{<n}") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const RankResult r = rank(Truncation(make_omega_lt(n), 256), 64);
    CHECK(r.value == OrdinalValue::finite(n));
    CHECK(r.trace.stages.back().empty());
    // a point of length k leaves at stage n-1-k
    for (const auto& w : r.trace.witnesses) {
      const SeqNat s = *make_omega_lt(n)->point_sequence(w.point);
      CHECK(w.stage == n - 1 - s.length());
    }
  }
}

TEST_CASE("a window too shallow for the top stage does not stabilize") {
  CHECK(rank(Truncation(make_omega_lt(6), 64), 64).value.shape == OrdinalValue::Shape::did_not_stabilize);
  CHECK(rank(Truncation(make_omega_lt(6), 128), 64).value == OrdinalValue::finite(6));
}

TEST_CASE("the union of all omega^{<n} has rank omega") {
  const RankResult r = rank(Truncation(make_omega_lt_family(), 256), 64);
  CHECK(r.value == OrdinalValue::omega_plus(0));
  REQUIRE(r.part_ranks.size() >= 4);
  for (std::size_t m = 0; m < 4; ++m) CHECK(r.part_ranks[m] == OrdinalValue::finite(m + 1));
  CHECK(OrdinalValue::omega_plus(0).str() == "omega_plus(0)");
}

TEST_CASE("derivative and Delta3 condition on finite preorders match brute force") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::vector<bool>> rel = oracle::random_poset(n, rng);
    if (trial % 3 == 0) {
      // glue two points into one class to leave T0
      const std::size_t a = rng() % n;
      const std::size_t b = rng() % n;
      rel[a][b] = rel[b][a] = true;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (rel[i][k] && rel[k][j]) rel[i][j] = true;
          }
        }
      }
    }
    const oracle::Topology top = oracle::alexandrov(rel);
    const Truncation t(make_finite(FiniteSpace::from_preorder(rel)), 8);
    const RankResult r = rank(t, 16);
    CHECK(r.value == OrdinalValue::finite(oracle::scattered_rank(top)));
    const Delta3Result d = delta3_condition(t, 16);
    CHECK((d.verdict == Verdict::holds_exactly) == oracle::delta3_condition(top));
    if (!oracle::delta3_condition(top)) CHECK(d.verdict == Verdict::fails_exactly);
  }
}

TEST_CASE("removal witnesses isolate their point") {
  const Truncation t(make_omega_lt(3), 64);
  const Order o(t);
  const DeriveStep step = derive_once(o, t.universe());
  CHECK_FALSE(step.witnesses.empty());
  for (const auto& w : step.witnesses) {
    CHECK_FALSE(step.next.contains(w.point));
    if (w.basic != npos) CHECK((basic_open(t, w.basic) & w.closed) == PointSet(64, {w.point}));
  }
}

TEST_CASE("Delta3 condition on presented spaces") {
  CHECK(delta3_condition(Truncation(make_SD(), 64), 16).verdict == Verdict::holds_at_depth);
  CHECK(delta3_condition(Truncation(make_omega_lt(3), 64), 16).verdict == Verdict::holds_at_depth);
  const Delta3Result s0 = delta3_condition(Truncation(make_S0(), 64), 16);
  CHECK(s0.verdict == Verdict::fails_exactly);
  CHECK(s0.subspace == Truncation(make_S0(), 64).universe());
}

TEST_CASE("the Pi3 witness evaluates to X") {
  const Truncation t(make_finite(FiniteSpace::from_subbasis(3, {{1, 2}, {2}})), 8);
  const Delta3Witness w = delta3_witness(t, t.universe(), 16);
  CHECK(w.verified);
  CHECK(w.expr.level().sigma_rank() <= 4);
  CHECK(extension(w.expr, t) == t.universe());

  const Truncation sd(make_SD(), 24);
  const Delta3Witness wsd = delta3_witness(sd, sd.universe(), 16);
  CHECK(wsd.verified);
  CHECK(extension(wsd.expr, sd) == sd.universe());

  CHECK_THROWS_AS(delta3_witness(Truncation(make_S0(), 32), Truncation(make_S0(), 32).universe(), 8),
                  PreconditionError);
}
