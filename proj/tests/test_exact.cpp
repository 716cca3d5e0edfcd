#include <gtest/gtest.h>

#include "fanforge/errors.hpp"
#include "fanforge/exact.hpp"
#include "oracles.hpp"

using namespace fanforge;

TEST(Rational, RoundTripsAsLowestTerms) {
  EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
  EXPECT_EQ(to_string(parse_rational("0")), "0/1");
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2/1");
  EXPECT_EQ(parse_rational("+1/3"), Rational(1, 3));
}

TEST(Rational, RejectsMalformed) {
  for (const char* bad : {"", "1/", "/2", "1/0", "a/b", "1.5", "1/-2", "--1"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << bad;
    }
  }
}

TEST(Powers, MatchGmp) {
  EXPECT_EQ(pow3(5), 243);
  EXPECT_EQ(pow2(10), 1024);
  EXPECT_EQ(inv_pow3(2), Rational(1, 9));
  EXPECT_EQ(inv_pow2(0), Rational(1));
  EXPECT_EQ(fanforge::ceil(Rational(7, 3)), 3);
  EXPECT_EQ(fanforge::ceil(Rational(-7, 3)), -2);
  EXPECT_EQ(fanforge::ceil(Rational(2)), 2);
}

TEST(Address, OrderIsLengthThenLex) {
  const auto all = Address::all_of_length(3);
  ASSERT_EQ(all.size(), 8u);
  EXPECT_EQ(all.front().to_string(), "000");
  EXPECT_EQ(all.back().to_string(), "111");
  for (std::size_t i = 0; i + 1 < all.size(); ++i) EXPECT_LT(all[i], all[i + 1]);
  EXPECT_LT(Address::parse("11"), Address::parse("000"));
  EXPECT_TRUE(Address::parse("01").is_prefix_of(Address::parse("0110")));
  EXPECT_FALSE(Address::parse("1").is_prefix_of(Address::parse("0110")));
  EXPECT_TRUE(Address().is_prefix_of(Address::parse("1")));
  EXPECT_EQ(Address::parse("0110").prefix(2).to_string(), "01");
  EXPECT_THROW(Address::parse("012"), Error);
}

TEST(Address, EndpointsMatchOracle) {
  for (int n = 0; n <= 5; ++n) {
    for (const auto& w : oracle::words(n)) {
      const Address a = Address::parse(w);
      EXPECT_EQ(endpoint_zero(a), oracle::left_end(w)) << w;
      EXPECT_EQ(endpoint_one(a), oracle::left_end(w) + Rational(1) / oracle::pow_q(3, n)) << w;
    }
  }
}

TEST(Cantor, MembershipMatchesTentOracle) {
  for (int den = 1; den <= 90; ++den) {
    for (int num = 0; num <= den; ++num) {
      const Rational q(num, den);
      EXPECT_EQ(cantor_member(Rational(q)), oracle::in_cantor(q)) << num << "/" << den;
    }
  }
  EXPECT_TRUE(cantor_member(Rational(1, 4)));
  EXPECT_TRUE(cantor_member(Rational(1, 3)));
  EXPECT_FALSE(cantor_member(Rational(1, 2)));
  EXPECT_THROW(cantor_member(Rational(3, 2)), Error);
}

TEST(Cantor, LocateFindsTheContainingInterval) {
  const Rational q(1, 4);
  for (int n = 0; n <= 8; ++n) {
    const BasicInterval b = basic_interval(locate(q, n));
    EXPECT_TRUE(b.contains(q));
    EXPECT_EQ(b.right - b.left, inv_pow3(n));
  }
  try {
    locate(Rational(1, 2), 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInCantor);
  }
}
