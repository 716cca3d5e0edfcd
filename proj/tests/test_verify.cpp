#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fanforge/errors.hpp"
#include "fanforge/serialize.hpp"
#include "fanforge/verify.hpp"
#include "oracles.hpp"

using namespace fanforge;

namespace {

ConstructionState mutated(const ConstructionState& s, int stage, std::size_t index,
                          const Rational& bottom, const Rational& top) {
  auto doc = state_json(s);
  doc["stages"][stage]["rects"][index]["a"] = to_string(bottom);
  doc["stages"][stage]["rects"][index]["b"] = to_string(top);
  // rebuild from the edited rects; the stored copy parameters would disagree
  ConstructionState out(s.truncation());
  for (const auto& st : doc["stages"]) {
    TilingStage t;
    t.n = st["n"].get<int>();
    for (const auto& r : st["rects"]) {
      t.rects.push_back(Rect{Address::parse(r["sigma"].get<std::string>()),
                             parse_rational(r["a"].get<std::string>()),
                             parse_rational(r["b"].get<std::string>())});
    }
    out.append(std::move(t));
  }
  return out;
}

std::size_t brute_components(const std::vector<PlanePoint>& pts, double eps) {
  std::vector<std::size_t> label(pts.size());
  std::iota(label.begin(), label.end(), std::size_t{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) <= eps && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
      }
    }
  }
  std::sort(label.begin(), label.end());
  return static_cast<std::size_t>(std::unique(label.begin(), label.end()) - label.begin());
}

// Kruskal oracle for the longest MST edge.
double kruskal_longest(const std::vector<PlanePoint>& pts) {
  struct E {
    double d;
    std::size_t a, b;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      edges.push_back({std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.d < y.d; });
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  double longest = 0;
  for (const E& e : edges) {
    const auto ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      longest = e.d;
    }
  }
  return longest;
}

}  // namespace

TEST(Verify, CanonicalBuildPassesTheSuite) {
  const auto state = build(2, 8);
  const auto report = run_suite(state, SuiteOptions{});
  EXPECT_TRUE(report.all_passed()) << report.to_text();
  EXPECT_EQ(report.count(CheckStatus::kSkipped), 0u);
  for (const auto& name : known_checks()) EXPECT_NE(report.find(name), nullptr) << name;
}

TEST(Verify, CoverageAtStageZeroIsTheMissingMass) {
  // 1 - sum_{m<4} 2^-(m+1) = 1/16
  const auto state = build(0, 4);
  const auto r = check_coverage(state, 0);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].status, CheckStatus::kPass);
  Rational mass = 0;
  for (int m = 0; m < 4; ++m) mass += Rational(1) / oracle::pow_q(2, m + 1);
  EXPECT_EQ(r.checks[0].metrics["max_gap"].get<std::string>(), to_string(1 - mass));
  EXPECT_EQ(to_string(1 - mass), "1/16");
}

TEST(Verify, StagesBeyondKAreSkipped) {
  const auto state = build(1, 4);
  EXPECT_EQ(check_coverage(state, 3).checks[0].status, CheckStatus::kSkipped);
  EXPECT_EQ(check_condition_v(state, 2).checks[0].status, CheckStatus::kSkipped);
  EXPECT_THROW(max_vertical_gap(state, 2), Error);
  SuiteOptions o;
  o.checks = parse_check_list("coverage:5");
  const auto r = run_suite(state, o);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].status, CheckStatus::kSkipped);
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, TallRectFailsConditionTwo) {
  const auto base = build(2, 6);
  const Rect r = base.stages()[2].rects[0];
  const auto bad = mutated(base, 2, 0, r.bottom, r.bottom + Rational(1, 2));
  const auto rep = check_conditions_i_ii(bad);
  EXPECT_FALSE(rep.all_passed());
  const auto* rec = rep.find("conditions_i_ii", "stage 2");
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->status, CheckStatus::kFail);
  EXPECT_EQ(rec->witness["index"].get<std::size_t>(), 0u);
}

TEST(Verify, OverlappingRectsFailTilingAndDisjointness) {
  const auto base = build(1, 4);
  // move R^1_1 up over R^1_0
  const Rect r0 = base.stages()[1].rects[0];
  const auto bad = mutated(base, 1, 1, r0.bottom - Rational(1, 64), r0.top - Rational(1, 64));
  EXPECT_FALSE(check_partial_tiling(bad).all_passed());
  const auto dis = check_disjointness(bad);
  EXPECT_FALSE(dis.all_passed());
  EXPECT_FALSE(dis.checks[0].witness.is_null());
}

TEST(Verify, DisjointnessCountsTheCornerTouch) {
  const auto state = build(1, 4);
  const auto r = check_disjointness(state);
  EXPECT_TRUE(r.all_passed());
  EXPECT_GE(r.checks[0].metrics["touching_ranges"].get<std::size_t>(), 1u);
}

TEST(Verify, MaxGapMatchesTraceOracleAtOneThird) {
  // the longest gap at stage 1 is at least every gap seen on sampled fibers
  const auto state = build(1, 4);
  const auto g = max_vertical_gap(state, 1);
  for (const Address& a : Address::all_of_length(4)) {
    const Rational c = endpoint_zero(a);
    std::vector<Rational> levels{Rational(-1)};
    for (const auto& h : vertical_trace(state, c, Rational(-1), Rational(2))) levels.push_back(h.height);
    levels.push_back(Rational(2));
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) EXPECT_LE(levels[k + 1] - levels[k], g.max_gap);
  }
  EXPECT_GE(g.max_gap, Rational(27, 32));
}

TEST(Verify, ConditionFiveReportsItsBound) {
  const auto state = build(2, 8);
  for (int n = 0; n <= 2; ++n) {
    const auto r = check_condition_v(state, n);
    ASSERT_EQ(r.checks[0].status, CheckStatus::kPass) << r.to_text();
    const Rational worst = parse_rational(r.checks[0].metrics["worst_distance_bound"].get<std::string>());
    EXPECT_LT(worst, Rational(1, n + 1) + inv_pow3(n));
  }
}

TEST(Verify, ConditionFiveFailsWhenAStripIsRemoved) {
  // dropping a stage-2 rect leaves a gap no pair of rectangles covers
  const auto base = build(2, 8);
  ConstructionState cut(base.truncation());
  cut.append(base.stages()[0]);
  cut.append(base.stages()[1]);
  TilingStage s2 = base.stages()[2];
  std::size_t drop = 0;
  for (std::size_t i = 0; i < s2.rects.size(); ++i) {
    if (s2.rects[i].height() > s2.rects[drop].height()) drop = i;
  }
  const Rect gone = s2.rects[drop];
  s2.rects.erase(s2.rects.begin() + static_cast<std::ptrdiff_t>(drop));
  cut.append(s2);
  const auto r = check_condition_v(cut, 2);
  EXPECT_EQ(r.checks[0].status, CheckStatus::kFail) << to_string(gone.bottom);
}

TEST(Verify, EpsilonComponentsMatchBruteForce) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 150; ++i) pts.push_back({u(rng), u(rng) * 0.3});
  for (double eps : {0.01, 0.03, 0.05, 0.1, 0.3}) {
    EXPECT_EQ(epsilon_components(pts, eps), brute_components(pts, eps)) << eps;
  }
  const double star = max_mst_edge(pts);
  EXPECT_DOUBLE_EQ(star, kruskal_longest(pts));
  EXPECT_EQ(epsilon_components(pts, star), 1u);
  EXPECT_GE(epsilon_components(pts, star / 2), 2u);
  EXPECT_EQ(max_mst_edge({}), 0);
  EXPECT_EQ(epsilon_components({}, 1), 0u);
}

TEST(Verify, NullSequenceShrinks) {
  const auto state = build(3, 8);
  const auto r = check_null_sequence(state);
  EXPECT_EQ(r.checks[0].status, CheckStatus::kPass);
  const auto& prof = r.checks[0].metrics["profile"];
  ASSERT_EQ(prof.size(), 4u);
  EXPECT_EQ(check_null_sequence(build(0, 4)).checks[0].status, CheckStatus::kSkipped);
}

TEST(Verify, FanDiameterOfStageZeroCopy) {
  // endpoints (0, 0) and (1, f(1)) bound the stage-0 copy; compare with the oracle
  const auto state = build(0, 4);
  double best = 0;
  std::vector<oracle::PlaneXY> pts;
  const auto d = oracle::jump_locations(4);
  pts.push_back(oracle::fan(0, 0));
  pts.push_back(oracle::fan(1, oracle::f(Rational(1), 4).get_d()));
  for (int n = 0; n < 4; ++n) {
    const Rational low = oracle::f(d[n], 4);
    pts.push_back(oracle::fan(d[n].get_d(), low.get_d()));
    pts.push_back(oracle::fan(d[n].get_d(), Rational(low + Rational(1) / oracle::pow_q(2, n + 1)).get_d()));
  }
  for (const auto& a : pts) {
    for (const auto& b : pts) best = std::max(best, std::hypot(a.x - b.x, a.y - b.y));
  }
  EXPECT_NEAR(fan_diameter(state.copy(0)), best, 1e-12);
}

TEST(Verify, CheckListParsing) {
  const auto sel = parse_check_list("coverage:2, disjointness,condition_v:0");
  ASSERT_EQ(sel.size(), 3u);
  EXPECT_EQ(sel[0].name, "coverage");
  EXPECT_EQ(*sel[0].n, 2);
  EXPECT_FALSE(sel[1].n.has_value());
  EXPECT_EQ(*sel[2].n, 0);
  EXPECT_THROW(parse_check_list("nonsense"), Error);
  EXPECT_THROW(parse_check_list("coverage:x"), Error);
  EXPECT_TRUE(parse_check_list("").empty());
}

TEST(Verify, ReportJsonShape) {
  const auto state = build(1, 4);
  SuiteOptions o;
  o.checks = parse_check_list("conditions_i_ii,coverage:4");
  const auto r = run_suite(state, o);
  const auto j = r.to_json(1, 4);
  EXPECT_EQ(j["schema"], "fanforge-report-v1");
  EXPECT_EQ(j["parameters"]["K"], 1);
  EXPECT_EQ(j["summary"]["skipped"], 1);
  EXPECT_EQ(j["summary"]["passed"], 2);
  EXPECT_TRUE(j["summary"]["all_passed"].get<bool>());
  EXPECT_NE(r.to_text().find("SKIPPED"), std::string::npos);
}
