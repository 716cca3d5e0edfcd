#include <gtest/gtest.h>

#include "fanforge/debski.hpp"
#include "fanforge/errors.hpp"
#include "oracles.hpp"

using namespace fanforge;

TEST(JumpPoints, MatchCanonicalOracle) {
  const auto got = jump_points(40);
  const auto want = oracle::jump_locations(40);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], want[i]) << i;
  EXPECT_EQ(got[0], Rational(1, 4));
  EXPECT_EQ(got[1], Rational(1, 12));
}

TEST(JumpPoints, AreInCantorAndDistinct) {
  const auto d = jump_points(64);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_TRUE(oracle::in_cantor(d[i]));
    for (std::size_t j = 0; j < i; ++j) EXPECT_NE(d[i], d[j]);
  }
}

TEST(Debski, JumpIdentities) {
  const int N = 12;
  const DebskiSet D = build_D(N);
  Rational mass = 0;
  const auto mids = midpoints(N);
  for (int n = 0; n < N; ++n) {
    const auto [r, s] = jump_interval(n, N);
    EXPECT_EQ(s - r, Rational(1) / oracle::pow_q(2, n + 1));
    EXPECT_EQ(r, oracle::f(oracle::jump_locations(N)[n], N));
    EXPECT_EQ(mids.points[n].r, r + Rational(1) / oracle::pow_q(2, n + 2));
    EXPECT_EQ(mids.points[n].c, oracle::jump_locations(N)[n]);
    mass += s - r;
  }
  EXPECT_EQ(mass, 1 - Rational(1) / oracle::pow_q(2, N));
  EXPECT_THROW(jump_interval(N, N), Error);
  EXPECT_THROW(jump_interval(-1, N), Error);
}

TEST(Debski, ValuesMatchOracleOnEndpoints) {
  const int N = 8;
  for (int n = 0; n <= 4; ++n) {
    for (const auto& w : oracle::words(n)) {
      const Rational c = oracle::left_end(w);
      EXPECT_EQ(f_value(c, N), oracle::f(c, N)) << w;
      const DebskiSet D(N);
      EXPECT_EQ(*D.value_at(c), oracle::f(c, N));
    }
  }
  EXPECT_EQ(f_value(Rational(1), N), 1 - Rational(1, 256));
}

TEST(Debski, ErrorsAtJumpsAndOffC) {
  try {
    f_value(Rational(1, 4), 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAtJumpLocation);
  }
  try {
    f_value(Rational(1, 2), 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInCantor);
  }
  EXPECT_FALSE(DebskiSet(4).value_at(Rational(1, 4)).has_value());
}

TEST(Debski, ProjectionGapsTotalTwoToMinusN) {
  for (int N : {1, 4, 9}) {
    Rational total = 0;
    for (const auto& [lo, hi] : DebskiSet(N).projection_gaps()) total += hi - lo;
    EXPECT_EQ(total, Rational(1) / oracle::pow_q(2, N));
  }
}

TEST(Debski, ClassifyAgainstGraph) {
  const DebskiSet D(4);
  EXPECT_EQ(classify_point(D, Point{Rational(1, 4), Rational(1, 2)}), Side::kOn);
  EXPECT_EQ(classify_point(D, Point{Rational(0), Rational(-1)}), Side::kBelow);
  EXPECT_EQ(classify_point(D, Point{Rational(1), Rational(2)}), Side::kAbove);
  EXPECT_THROW(classify_point(D, Point{Rational(1, 2), Rational(0)}), Error);
}

TEST(Debski, GraphClosureHasTopsButNotSegmentInteriors) {
  const auto E = graph_closure_E(4);
  const auto [r, s] = jump_interval(0, 4);
  EXPECT_TRUE(E.contains(Point{Rational(1, 4), r}));
  EXPECT_TRUE(E.contains(Point{Rational(1, 4), s}));
  EXPECT_FALSE(E.contains(Point{Rational(1, 4), (r + s) / 2}));
  EXPECT_EQ(E.tops.size(), 4u);
}
