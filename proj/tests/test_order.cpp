#include "qpolish/order.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qpolish;

namespace {

PointSet to_set(Mask m, std::size_t depth) {
  PointSet s(depth);
  for (Point p = 0; p < 64 && p < depth; ++p) {
    if ((m >> p) & 1U) s.insert(p);
  }
  return s;
}

}  // namespace

TEST_CASE("specialization, closure and interior agree with brute force on finite spaces") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto leq_rel = oracle::random_poset(n, rng);
    const oracle::Topology top = oracle::alexandrov(leq_rel);
    const FiniteSpace fs = FiniteSpace::from_preorder(leq_rel);
    const Truncation t(make_finite(fs), 16);
    const Order o(t);
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) {
        CHECK(o.leq(x, y) == top.leq(x, y));
        const SpecializationAnswer a = leq(t, x, y);
        CHECK(a.related == top.leq(x, y));
        CHECK(a.certainty == Certainty::exact);
      }
    }
    for (Mask s = 0; s <= oracle::full_mask(n); ++s) {
      CHECK(closure(t, to_set(s, 16)) == to_set(top.closure(s), 16));
      CHECK(interior(t, to_set(s, 16)) == to_set(top.interior(s), 16));
    }
    Mask maxima = 0;
    for (Point x = 0; x < n; ++x) {
      bool top_point = true;
      for (Point y = 0; y < n; ++y) top_point = top_point && (y == x || !top.leq(x, y));
      if (top_point) maxima |= Mask{1} << x;
    }
    CHECK(max_points(t) == to_set(maxima, 16));
  }
}

TEST_CASE("closure is a Kuratowski operator on presented windows") {
  std::mt19937_64 rng(8);
  for (const SpacePtr& s : {make_SD(), make_S1(), make_S0(), make_omega_lt(3), make_S2()}) {
    CAPTURE(s->tag());
    const Truncation t(s, 48);
    const Order o(t);
    for (int trial = 0; trial < 40; ++trial) {
      PointSet a(48), b(48);
      for (Point p = 0; p < 48; ++p) {
        if (rng() % 5 == 0) a.insert(p);
        if (rng() % 5 == 0) b.insert(p);
      }
      const PointSet ca = closure(o, a);
      CHECK(a.is_subset_of(ca));
      CHECK(closure(o, ca) == ca);
      CHECK(closure(o, a | b) == (ca | closure(o, b)));
      CHECK(closure(o, a & b).is_subset_of(ca));
      CHECK(interior(t, a).is_subset_of(a));
    }
  }
}

TEST_CASE("separation axioms of the canonical spaces") {
  const Truncation s1(make_S1(), 64);
  CHECK(is_T1(s1).holds());
  const AxiomResult t2 = is_T2(s1);
  CHECK(t2.fails());
  REQUIRE(t2.witness.size() == 2);
  for (std::size_t u = 0; u < 64; ++u) {
    for (std::size_t v = 0; v < 64; ++v) CHECK(basic_open(s1, u).intersects(basic_open(s1, v)));
  }
  CHECK(is_TD(s1).holds());
  CHECK(is_perfect(s1).holds());
  CHECK(triangle_rel(s1, 3, 0));

  const Truncation sd(make_SD(), 64);
  CHECK(is_T0(sd).holds());
  CHECK(is_T1(sd).fails());
  CHECK(is_TD(sd).holds());

  const Truncation s2(make_S2(), 128);
  CHECK(is_T1(s2).holds());
  CHECK_FALSE(is_T2(s2).fails());
  CHECK(is_perfect(s2).holds());

  const Truncation s0(make_S0(), 64);
  CHECK(is_T0(s0).holds());
  CHECK(is_T1(s0).fails());
  CHECK_FALSE(is_TD(s0).holds());

  const FiniteSpace indiscrete = FiniteSpace::from_subbasis(2, {});
  const Truncation ti(make_finite(indiscrete), 4);
  CHECK(is_T0(ti).verdict == Verdict::fails_exactly);

  const FiniteSpace sierpinski = FiniteSpace::from_subbasis(2, {{1}});
  const AxiomResult perfect = is_perfect(Truncation(make_finite(sierpinski), 4));
  CHECK(perfect.fails());
}

TEST_CASE("every finite T0 space is T_D and sober") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto rel = oracle::random_poset(n, rng);
    const FiniteSpace fs = FiniteSpace::from_preorder(rel);
    const oracle::Topology top = oracle::alexandrov(rel);
    CHECK(oracle::is_TD(top));
    CHECK(is_TD(Truncation(make_finite(fs), 8)).verdict == Verdict::holds_exactly);
    CHECK(is_sober(fs) == oracle::is_sober(top));
    CHECK(is_sober(fs));
  }
}

TEST_CASE("sobriety evidence") {
  const SoberEvidence s1 = sober_evidence(Truncation(make_S1(), 64));
  CHECK(s1.nonsober);
  CHECK_FALSE(s1.closed.empty());
  const SoberEvidence sd = sober_evidence(Truncation(make_SD(), 64));
  CHECK(sd.nonsober);
  const FiniteSpace chain = FiniteSpace::from_subbasis(3, {{1, 2}, {2}});
  CHECK_FALSE(sober_evidence(Truncation(make_finite(chain), 8)).nonsober);
}
