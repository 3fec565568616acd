#include "qpolish/borel.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qpolish;

TEST_CASE("levels") {
  CHECK(BorelExpr::basic(3).level() == Level{BorelClass::Sigma, 1});
  CHECK(BorelExpr::complement(BorelExpr::basic(3)).level() == Level{BorelClass::Pi, 1});
  const auto s2 = BorelExpr::sigma(2, {{BorelExpr::basic(1), BorelExpr::basic(2)}});
  CHECK(s2.level() == Level{BorelClass::Sigma, 2});
  CHECK(BorelExpr::complement(s2).level() == Level{BorelClass::Pi, 2});
  CHECK(BorelExpr::sigma(3, {{s2, BorelExpr::empty()}}).level().n == 3);
  CHECK_THROWS_AS(BorelExpr::sigma(3, {{BorelExpr::complement(s2), BorelExpr::empty()}}), LevelError);
  CHECK_THROWS_AS(BorelExpr::sigma(2, {{BorelExpr::complement(BorelExpr::basic(1)), BorelExpr::empty()}}), LevelError);
  CHECK_THROWS_AS(BorelExpr::sigma(2, {{s2, BorelExpr::empty()}}), LevelError);
  CHECK_THROWS_AS(BorelExpr::sigma(1, {{BorelExpr::basic(0), BorelExpr::basic(1)}}), LevelError);
  CHECK_THROWS_AS(BorelExpr::sigma(4, {{BorelExpr::basic(0), BorelExpr::basic(1)}}), LevelError);
}

TEST_CASE("text form round-trips") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const BorelExpr e = oracle::random_expr(rng, 6, 1 + static_cast<int>(rng() % 3), 6);
    const BorelExpr back = parse_borel(e.str());
    CHECK(back.str() == e.str());
    CHECK(back.level() == e.level());
  }
  CHECK(parse_borel("b2").str() == BorelExpr::basic(2).str());
  CHECK_THROWS(parse_borel("sigma2(diff(b1 b2))"));
  CHECK_THROWS(parse_borel("b"));
}

TEST_CASE("evaluation agrees with set computation on small finite spaces") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto rel = oracle::random_poset(n, rng);
    const oracle::Topology top = oracle::alexandrov(rel);
    const Truncation t(make_finite(FiniteSpace::from_preorder(rel)), 8);
    const auto basics = oracle::presented_basics(top);
    const BorelExpr e = oracle::random_expr(rng, n + 1, 1 + static_cast<int>(rng() % 3), 6);
    const Mask want = oracle::evaluate(e, basics, n);
    for (Point x = 0; x < n; ++x) CHECK(eval(e, t, x) == oracle::has(want, x));
  }
}

TEST_CASE("a Pi2 intersection on a five-point space") {
  const std::vector<std::vector<bool>> rel{{1, 1, 1, 1, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
  const oracle::Topology top = oracle::alexandrov(rel);
  const auto basics = oracle::presented_basics(top);
  const Truncation t(make_finite(FiniteSpace::from_preorder(rel)), 8);
  // ⋂ ((X ∖ V_i) ∪ U_i) = X ∖ ⋃ (V_i ∖ U_i)
  const BorelExpr pi2 = BorelExpr::pi(2, {{BorelExpr::basic(3), BorelExpr::basic(2)}, {BorelExpr::basic(1), BorelExpr::basic(4)}});
  Mask want = oracle::full_mask(5);
  want &= ~basics[3] | basics[2];
  want &= ~basics[1] | basics[4];
  CHECK(oracle::evaluate(pi2, basics, 5) == want);
  for (Point x = 0; x < 5; ++x) CHECK(eval(pi2, t, x) == oracle::has(want, x));
}

TEST_CASE("delta nodes check both halves") {
  const FiniteSpace fs = FiniteSpace::from_subbasis(2, {{1}});
  const Truncation t(make_finite(fs), 4);
  const auto same = BorelExpr::delta(
      2, BorelExpr::basic(2), BorelExpr::complement(BorelExpr::sigma(2, {{BorelExpr::basic(0), BorelExpr::basic(2)}})));
  CHECK(extension(same, t) == PointSet(4, {1}));
  const auto differ = BorelExpr::delta(2, BorelExpr::basic(2), BorelExpr::basic(0));
  CHECK_THROWS_AS(extension(differ, t), PreconditionError);
  CHECK_THROWS_AS(extension(BorelExpr::basic(9), t), std::out_of_range);
}

TEST_CASE("singletons of finite T0 spaces are differences of opens") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto rel = oracle::random_poset(n, rng);
    const FiniteSpace fs = FiniteSpace::from_preorder(rel);
    const oracle::Topology top = oracle::alexandrov(rel);
    for (Point x = 0; x < n; ++x) {
      const SingletonWitness w = singleton_sigma2_witness(fs, x);
      CHECK(std::find(top.opens.begin(), top.opens.end(), w.u) != top.opens.end());
      CHECK(std::find(top.opens.begin(), top.opens.end(), w.v) != top.opens.end());
      CHECK((w.u & ~w.v) == (Mask{1} << x));
    }
  }
  CHECK_THROWS_AS(singleton_sigma2_witness(FiniteSpace::from_subbasis(2, {}), 0), PreconditionError);
}

TEST_CASE("the diagonal is Sigma2") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const FiniteSpace fs = FiniteSpace::from_preorder(oracle::random_poset(n, rng));
    const DiagonalWitness d = diagonal_sigma2(fs);
    CHECK(d.verified);
    CHECK(d.expr.level() == Level{BorelClass::Sigma, 2});
    const Truncation t(d.product, d.product->full_depth());
    for (Point a = 0; a < n; ++a) {
      for (Point b = 0; b < n; ++b) CHECK(eval(d.expr, t, d.product->point_of(a, b)) == (a == b));
    }
  }
  const DiagonalWitness one = diagonal_sigma2(FiniteSpace::from_subbasis(1, {}));
  CHECK(extension(one.expr, Truncation(one.product, one.product->full_depth())).size() == 1);
}

TEST_CASE("a Sigma2 cover has a member with interior") {
  const FiniteSpace fs = FiniteSpace::from_subbasis(3, {{1, 2}, {2}});
  // b0 = X, b1 = ↑0 = X, b2 = ↑1 = {1,2}, b3 = ↑2 = {2}
  const std::vector<BorelExpr> cover{BorelExpr::sigma(2, {{BorelExpr::basic(0), BorelExpr::basic(2)}}),
                                     BorelExpr::sigma(2, {{BorelExpr::basic(2), BorelExpr::empty()}})};
  const CoverInterior ci = sigma2_cover_interior(fs, cover);
  CHECK(ci.index == 1);
  CHECK(ci.open != 0);
  const std::vector<BorelExpr> partial{BorelExpr::sigma(2, {{BorelExpr::basic(0), BorelExpr::basic(2)}})};
  CHECK_THROWS_AS(sigma2_cover_interior(fs, partial), PreconditionError);
}
