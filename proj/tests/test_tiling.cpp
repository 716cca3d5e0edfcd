#include <gtest/gtest.h>

#include <algorithm>

#include "fanforge/errors.hpp"
#include "fanforge/tiling.hpp"
#include "oracles.hpp"

using namespace fanforge;

namespace {

struct PaperRect {
  std::string sigma;
  Rational a, b;
};

// Stage 1 as written in the construction, with f from the oracle.
std::vector<PaperRect> paper_stage_one(int N) {
  const Rational fl = oracle::f(Rational(1, 3), N);
  const Rational fr = oracle::f(Rational(2, 3), N);
  std::vector<PaperRect> r = {{"0", (fl + 1) / 2, 1}, {"0", fl, (fl + 1) / 2},
                              {"1", fr / 2, fr},      {"1", 0, fr / 2}};
  for (const char* s : {"0", "1"}) {
    for (const Rational& a : {Rational(-1), Rational(-1, 2), Rational(1), Rational(3, 2)}) {
      r.push_back({s, a, a + Rational(1, 2)});
    }
  }
  return r;
}

}  // namespace

TEST(Tiling, StageOneIsThePaperList) {
  const auto state = build(1, 4);
  ASSERT_EQ(state.stages().size(), 2u);
  EXPECT_EQ(state.stages()[0].rects.size(), 1u);
  const auto& rects = state.stages()[1].rects;
  const auto want = paper_stage_one(4);
  ASSERT_EQ(rects.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(rects[i].address.to_string(), want[i].sigma) << i;
    EXPECT_EQ(rects[i].bottom, want[i].a) << i;
    EXPECT_EQ(rects[i].top, want[i].b) << i;
  }
  EXPECT_EQ(state.copy_count(), 13u);
}

TEST(Tiling, TraceAtOneThirdMatchesPlacementOracle) {
  const int N = 4;
  const auto state = build(1, N);
  const Rational c(1, 3);
  std::vector<Rational> want = oracle::copy_heights("", 0, 1, c, N);
  for (const auto& r : paper_stage_one(N)) {
    if (r.sigma == "0") {
      for (const Rational& h : oracle::copy_heights(r.sigma, r.a, r.b, c, N)) {
        if (h >= -1 && h <= 2) want.push_back(h);
      }
    }
  }
  std::sort(want.begin(), want.end());
  const auto hits = vertical_trace(state, c, Rational(-1), Rational(2));
  ASSERT_EQ(hits.size(), want.size());
  for (std::size_t i = 0; i < hits.size(); ++i) EXPECT_EQ(hits[i].height, want[i]) << i;
  EXPECT_EQ(hits.size(), 7u);
}

TEST(Tiling, TraceErrors) {
  const auto state = build(1, 4);
  try {
    vertical_trace(state, Rational(1, 2), Rational(0), Rational(1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInCantor);
  }
  try {
    vertical_trace(state, Rational(1, 4), Rational(0), Rational(1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJumpHit);
  }
  const auto base = build(0, 4);
  const auto hits = vertical_trace(base, Rational(0), Rational(0), Rational(1));
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].height, 0);
}

TEST(Tiling, ConditionsOneAndTwoOnEveryStage) {
  const auto state = build(3, 8);
  for (const auto& s : state.stages()) {
    for (const Rect& r : s.rects) {
      EXPECT_EQ(r.address.length(), s.n);
      EXPECT_GT(r.height(), 0);
      EXPECT_LE(r.height(), Rational(1, s.n + 1));
    }
  }
}

TEST(Tiling, StageRectsStayInsideTheTraceRange) {
  const auto state = build(3, 8);
  for (const auto& s : state.stages()) {
    for (const Rect& r : s.rects) {
      EXPECT_GE(r.bottom, -s.n);
      EXPECT_LE(r.top, s.n + 1);
    }
  }
}

TEST(Tiling, SampledTracesAreStrictlyIncreasing) {
  // Disjointness oracle by sampling: at every depth-6 endpoint the copies
  // cross at distinct heights, checked with the placement oracle.
  const int N = 6;
  const auto state = build(2, N);
  for (const Address& a : Address::all_of_length(6)) {
    for (const Rational& c : {endpoint_zero(a), endpoint_one(a)}) {
      std::vector<Rational> hs;
      for (const PlacedCopy& copy : state.copies()) {
        if (!basic_interval(copy.rect().address).contains(c)) continue;
        for (const Rational& h : oracle::copy_heights(copy.rect().address.to_string(),
                                                      copy.rect().bottom, copy.rect().top, c, N)) {
          hs.push_back(h);
        }
      }
      std::sort(hs.begin(), hs.end());
      EXPECT_EQ(std::adjacent_find(hs.begin(), hs.end()), hs.end()) << to_string(c);
      const auto hits = vertical_trace(state, c, Rational(-2), Rational(3));
      ASSERT_EQ(hits.size(), hs.size());
      for (std::size_t i = 0; i < hs.size(); ++i) EXPECT_EQ(hits[i].height, hs[i]);
    }
  }
}

TEST(Tiling, BetweennessAcrossConsecutiveInheritedCopies) {
  // For each column at stage n, consecutive inherited copies at 0(sigma) have
  // a stage-n copy strictly between them there.
  const auto state = build(3, 8);
  for (int n = 2; n <= 3; ++n) {
    for (const Address& sigma : Address::all_of_length(n)) {
      const Rational c = endpoint_zero(sigma);
      const auto old_hits = vertical_trace(state, c, Rational(-n), Rational(n + 1), n - 1);
      const auto new_hits = vertical_trace(state, c, Rational(-n), Rational(n + 1), n);
      for (std::size_t k = 0; k + 1 < old_hits.size(); ++k) {
        bool between = false;
        for (const auto& h : new_hits) {
          between = between || (state.copy(h.copy).stage() == n && old_hits[k].height < h.height &&
                                h.height < old_hits[k + 1].height);
        }
        EXPECT_TRUE(between) << sigma.to_string() << " k=" << k;
      }
    }
  }
}

TEST(Tiling, StageOrderIsEnforced) {
  ConstructionState state(4);
  EXPECT_THROW(state.append(stage_one(4)), Error);
  state.append(stage_zero(4));
  try {
    stage_n(state, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStageOrderViolation);
  }
}

TEST(Tiling, CoarseTruncationIsLoud) {
  try {
    build(1, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncationTooCoarse);
  }
  EXPECT_NO_THROW(build(0, 1));
}

TEST(Tiling, BuildIsDeterministic) {
  const auto a = build(3, 8);
  const auto b = build(3, 8);
  ASSERT_EQ(a.copy_count(), b.copy_count());
  for (std::size_t i = 0; i < a.stages().size(); ++i) {
    EXPECT_EQ(a.stages()[i].rects, b.stages()[i].rects);
  }
}

TEST(Tiling, SpanningListsPrefixCopies) {
  const auto state = build(2, 6);
  const Address col = Address::parse("01");
  for (const PlacedCopy* c : state.spanning(col)) {
    EXPECT_TRUE(c->rect().address.is_prefix_of(col));
  }
  std::size_t expected = 0;
  for (const PlacedCopy& c : state.copies()) expected += c.rect().address.is_prefix_of(col) ? 1 : 0;
  EXPECT_EQ(state.spanning(col).size(), expected);
  EXPECT_THROW(state.copy(state.copy_count()), Error);
}

TEST(Cells, SweepAgreesWithDirectPatterns) {
  const auto state = build(2, 6);
  for (const Address& sigma : Address::all_of_length(2)) {
    const CellDecomposition cells(sigma, state.spanning(sigma));
    EXPECT_EQ(cells.cell_count(), 2 * cells.breakpoints().size() + 1);
    cells.sweep([&](std::size_t i, const Cell& cell, std::span<const CellCrossing> sorted,
                    std::span<const std::size_t>) {
      const auto direct = cells.pattern(i);
      ASSERT_EQ(direct.size(), sorted.size());
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        EXPECT_EQ(direct[k].slot, sorted[k].slot);
        EXPECT_EQ(direct[k].crossing.lo, sorted[k].crossing.lo);
        EXPECT_EQ(direct[k].crossing.hi, sorted[k].crossing.hi);
      }
      if (cell.is_point()) {
        EXPECT_EQ(cells.cell_of(cell.left), i);
      }
    });
    EXPECT_FALSE(cells.first_intersection().has_value());
  }
}

TEST(Cells, DetectsAnIntersection) {
  // Two copies in overlapping rects of one column must meet.
  ConstructionState state(4);
  TilingStage s0 = stage_zero(4);
  state.append(s0);
  TilingStage s1;
  s1.n = 1;
  // both copies start at height 0 over c = 0
  s1.rects.push_back(Rect{Address::parse("0"), Rational(0), Rational(1)});
  state.append(s1);
  EXPECT_TRUE(copies_intersect(state.copy(0), state.copy(1)).has_value());
  const CellDecomposition cells(Address::parse("0"), {&state.copy(0), &state.copy(1)});
  EXPECT_TRUE(cells.first_intersection().has_value());
  EXPECT_THROW(CellDecomposition(Address(), {&state.copy(1)}), Error);
}
