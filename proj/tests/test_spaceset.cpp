#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fanforge/errors.hpp"
#include "fanforge/spaceset.hpp"
#include "oracles.hpp"

using namespace fanforge;

TEST(SpaceModel, QPointsAreMidpointImages) {
  const auto single = build(0, 1);
  const SpaceModel m0(single);
  ASSERT_EQ(m0.q_points().size(), 1u);
  EXPECT_EQ(m0.q_points()[0].point, (Point{Rational(1, 4), Rational(1, 4)}));

  const auto state = build(1, 4);
  const SpaceModel m(state);
  EXPECT_EQ(m.q_points().size(), 52u);
  for (const QPoint& q : m.q_points()) {
    EXPECT_EQ(m.classify(q.point), Membership::kQ);
    const Rect& r = state.copy(q.copy).rect();
    const auto d = oracle::jump_locations(4)[static_cast<std::size_t>(q.jump)];
    const Rational local_r = oracle::f(d, 4) + Rational(1) / oracle::pow_q(2, q.jump + 2);
    EXPECT_EQ(q.point.r, r.bottom + r.height() * local_r);
    EXPECT_EQ(q.point.c, oracle::left_end(r.address.to_string()) +
                             d / oracle::pow_q(3, r.address.length()));
  }
}

TEST(SpaceModel, ClassifyPointsOnAndOffCopies) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  // c = 1/3: the stage-0 copy is at 13/16 there and R^1_1's copy at 461/512
  EXPECT_EQ(m.classify(Point{Rational(1, 3), Rational(13, 16)}), Membership::kOutside);
  EXPECT_EQ(m.classify(Point{Rational(1, 3), Rational(7, 8)}), Membership::kP);
  // off the midpoint but on a jump segment of the stage-0 copy
  EXPECT_EQ(m.classify(Point{Rational(1, 4), Rational(1, 2)}), Membership::kOutside);
  EXPECT_THROW(m.classify(Point{Rational(1, 2), Rational(0)}), Error);
}

TEST(Maps, XiAndNablaValues) {
  EXPECT_DOUBLE_EQ(xi_map(0.3, 0).y, 0.5);
  EXPECT_DOUBLE_EQ(xi_map(0.3, 1).y, 0.75);
  EXPECT_DOUBLE_EQ(xi_map(0.3, -1).y, 0.25);
  for (double r : {-100.0, -1.0, 0.0, 2.0, 1e6}) {
    const double y = xi_map(0, r).y;
    EXPECT_GT(y, 0);
    EXPECT_LT(y, 1);
  }
  for (const Rational& c : {Rational(0), Rational(1, 4), Rational(1)}) {
    EXPECT_EQ(nabla_map(Point{c, Rational(0)}), (Point{Rational(1, 2), Rational(0)}));
    EXPECT_EQ(nabla_map(Point{c, Rational(1)}), (Point{c, Rational(1)}));
  }
  EXPECT_EQ(nabla_map(Point{Rational(1, 4), Rational(1, 2)}), (Point{Rational(3, 8), Rational(1, 2)}));
  const PlanePoint p = fan_point(Point{Rational(1, 4), Rational(2)});
  const auto o = oracle::fan(0.25, 2.0);
  EXPECT_NEAR(p.x, o.x, 1e-15);
  EXPECT_NEAR(p.y, o.y, 1e-15);
}

TEST(Maps, NablaInjectiveAwayFromTheBottom) {
  std::set<std::pair<Rational, Rational>> seen;
  for (const auto& w : oracle::words(4)) {
    for (int k = 1; k <= 8; ++k) {
      const Point image = nabla_map(Point{oracle::left_end(w), Rational(k, 8)});
      EXPECT_TRUE(seen.insert({image.c, image.r}).second);
    }
  }
}

TEST(Regions, BetweenStageZeroAndRectOne) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  const Region r = region_between(m, 0, 2, Address::parse("0"));
  EXPECT_EQ(r.kind, RegionKind::kBetweenCopies);
  EXPECT_FALSE(r.boundary.empty());
  const BasicInterval span = basic_interval(Address::parse("0"));
  for (const QPoint& q : r.boundary) {
    EXPECT_TRUE(q.copy == 0 || q.copy == 2);
    EXPECT_TRUE(span.contains(q.point.c));
    EXPECT_EQ(m.classify(q.point), Membership::kQ);
  }
  EXPECT_TRUE(r.contains(m, Point{Rational(1, 3), Rational(7, 8)}));
  EXPECT_FALSE(r.contains(m, Point{Rational(1, 3), Rational(3, 4)}));
  EXPECT_FALSE(r.contains(m, Point{Rational(2, 3), Rational(1, 2)}));

  try {
    region_between(m, 2, 0, Address::parse("0"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotOrdered);
  }
  try {
    region_between(m, 0, 3, Address::parse("0"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSpanning);
  }
}

TEST(Regions, TanLowerBoundIsSound) {
  EXPECT_EQ(tan_lower_bound(Rational(1, 2)), 0);
  for (int k = 1; k < 20; ++k) {
    const Rational eps(k, 20);
    const double t = std::tan(M_PI * (eps.get_d() - 0.5));
    EXPECT_LE(tan_lower_bound(eps).get_d(), t);
    EXPECT_GT(tan_lower_bound(eps).get_d(), t - 1e-5 * (1 + std::fabs(t)));
  }
  EXPECT_THROW(tan_lower_bound(Rational(0)), Error);
  EXPECT_THROW(tan_lower_bound(Rational(1)), Error);
}

TEST(Regions, VertexNeighborhood) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  const Region r = vertex_neighborhood(m, Rational(1, 2));
  EXPECT_EQ(r.kind, RegionKind::kBelowCopies);
  ASSERT_EQ(r.columns.size(), 2u);
  for (CopyId id : r.copies) {
    EXPECT_LE(state.copy(id).rect().top, 0);
    EXPECT_GE(state.copy(id).rect().bottom, -1);
  }
  EXPECT_EQ(r.boundary.size(), 2u * 4u);
  try {
    vertex_neighborhood(m, Rational(1, 100));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDepthInsufficient);
  }
}

TEST(Sampling, FiberSamplesHalveTheLongestGap) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  const Rational c(1, 3);
  std::vector<Rational> levels{Rational(-1)};
  for (const auto& h : vertical_trace(state, c, Rational(-1), Rational(2))) levels.push_back(h.height);
  levels.push_back(Rational(2));
  std::size_t pick = 0;
  for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
    if (levels[k + 1] - levels[k] > levels[pick + 1] - levels[pick]) pick = k;
  }
  const auto one = fiber_samples(m, c, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].r, (levels[pick] + levels[pick + 1]) / 2);
  for (const Point& p : fiber_samples(m, c, 5)) EXPECT_EQ(m.classify(p), Membership::kP);
}

TEST(Sampling, CloudCountsAndVertex) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  const PointCloud cloud = sample_points(m, 2, 2);
  ASSERT_FALSE(cloud.points.empty());
  EXPECT_EQ(cloud.tags[0], SampleTag::kVertex);
  EXPECT_DOUBLE_EQ(cloud.points[0].x, 0.5);
  EXPECT_DOUBLE_EQ(cloud.points[0].y, 0.0);
  const std::size_t fibers = 2 * 4;  // two endpoints of each depth-2 interval
  EXPECT_EQ(cloud.points.size(), 1 + m.q_points().size() + fibers * 2);
  EXPECT_THROW(sample_points(m, 0, 1), Error);
  const std::string csv = cloud_csv(cloud);
  EXPECT_EQ(csv.rfind("x,y,tag\n", 0), 0u);
}

TEST(Sampling, FSetIsFiniteAndCoveredByJumps) {
  const auto state = build(1, 4);
  const SpaceModel m(state);
  const auto cs = f_set(m, Rational(1, 2), Rational(5, 8));
  for (const Rational& c : cs) {
    bool hit = false;
    for (const auto& s : crossings(state, c)) {
      hit = hit || (s.crossing.lo <= Rational(1, 2) && Rational(5, 8) <= s.crossing.hi);
    }
    EXPECT_TRUE(hit);
  }
  EXPECT_FALSE(cs.empty());
}
