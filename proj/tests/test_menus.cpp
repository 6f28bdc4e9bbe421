#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "duopoly/error.hpp"
#include "duopoly/menus.hpp"
#include "support.hpp"

using namespace duopoly;
using testing_support::Gen;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void expect_points(const PricingMenu& m, std::vector<Breakpoint> want, double tol = 1e-12) {
  auto got = m.breakpoints();
  ASSERT_EQ(got.size(), want.size()) << describe(m);
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(got[i].x, want[i].x, tol) << describe(m);
    EXPECT_NEAR(got[i].price, want[i].price, tol) << describe(m);
  }
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a DomainError";
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(FixedPrice, ZeroIsGiveAway) {
  PricingMenu m = fixed_price(0.0);
  EXPECT_EQ(m, give_away());
  EXPECT_EQ(*m.price(0.7), 0.0);
  EXPECT_EQ(m.x_bar(), 1.0);
}

TEST(FixedPrice, Linear) {
  EXPECT_DOUBLE_EQ(*fixed_price(0.8).price(0.5), 0.4);
  EXPECT_DOUBLE_EQ(*fixed_price(1.0).price(1.0), 1.0);
}

TEST(Properize, NonConvexPairCollapsesToChord) {
  // Slopes 0.4 then 0.2: the middle point lies above the chord to (1, 0.3).
  expect_points(properize({{0.5, 0.2}, {1.0, 0.3}}), {{0, 0}, {1.0, 0.3}});
}

TEST(Properize, ConvexPointsAreKept) {
  expect_points(properize({{0.5, 0.1}, {1.0, 0.3}}), {{0, 0}, {0.5, 0.1}, {1.0, 0.3}});
}

TEST(Properize, PointAboveChordIsLifted) {
  PricingMenu m = properize({{0.5, 0.4}, {1.0, 0.5}});
  expect_points(m, {{0, 0}, {1.0, 0.5}});
  EXPECT_DOUBLE_EQ(*m.price(0.5), 0.25);
}

TEST(Properize, DuplicateKeepsCheaperPrice) {
  expect_points(properize({{1.0, 0.7}, {1.0, 0.9}}), {{0, 0}, {1.0, 0.7}});
}

TEST(Properize, RejectsInvalidPoints) {
  EXPECT_EQ(code_of([] { properize({{1.2, 0.1}}); }), ErrorCode::invalid_point);
  EXPECT_EQ(code_of([] { properize({{0.5, -0.1}}); }), ErrorCode::invalid_point);
}

TEST(Menu, UnavailableAboveXBar) {
  PricingMenu m = SingleLottery{0.5, 0.5}.menu();
  EXPECT_FALSE(m.price(0.6).has_value());
  EXPECT_EQ(code_of([&] { m.price_or_throw(0.6); }), ErrorCode::unavailable);
}

TEST(Lottery, MenuShape) {
  SingleLottery l{0.4, 0.75};
  EXPECT_DOUBLE_EQ(l.a(), 0.3);
  expect_points(l.menu(), {{0, 0}, {0.4, 0.3}});
  auto back = as_single_lottery(l.menu());
  ASSERT_TRUE(back.has_value());
  EXPECT_DOUBLE_EQ(back->z, 0.4);
  EXPECT_DOUBLE_EQ(back->p, 0.75);
  EXPECT_FALSE(as_single_lottery(properize({{0.5, 0.1}, {1.0, 0.3}})).has_value());
}

TEST(Lottery, Validation) {
  EXPECT_EQ(code_of([] { make_lottery(0.0, 0.5); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { make_lottery(1.5, 0.5); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { make_lottery(0.5, -1.0); }), ErrorCode::invalid_argument);
}

TEST(Demand, FixedPrice) {
  EXPECT_EQ(demand(fixed_price(0.4), 0.3), 0.0);
  EXPECT_EQ(demand(fixed_price(0.4), 0.4), 1.0);
}

TEST(Demand, LotteryAboveItsPrice) {
  EXPECT_EQ(demand(SingleLottery{0.5, 0.5}.menu(), 0.8), 0.5);
}

TEST(Demand, InfiniteValueTakesXBar) {
  EXPECT_EQ(demand(SingleLottery{0.3, 2.0}.menu(), kInf), 0.3);
}

TEST(Envelope, IdentityOnProperMenus) {
  EXPECT_EQ(lower_convex_envelope(fixed_price(0.5)), fixed_price(0.5));
  PricingMenu m = properize({{0.3, 0.3}, {0.6, 0.4}});
  EXPECT_EQ(lower_convex_envelope(m), m);
  PricingMenu k = properize({{0.5, 0.1}, {1.0, 0.9}});
  EXPECT_EQ(lower_convex_envelope(k), k);
}

TEST(Subgradient, FixedPrice) {
  SlopeRange mid = subgradient_range(fixed_price(0.7), 0.5);
  EXPECT_DOUBLE_EQ(mid.low, 0.7);
  EXPECT_DOUBLE_EQ(mid.high, 0.7);
  SlopeRange top = subgradient_range(fixed_price(0.7), 1.0);
  EXPECT_DOUBLE_EQ(top.low, 0.7);
  EXPECT_EQ(top.high, kInf);
}

TEST(Subgradient, AtKink) {
  PricingMenu m = properize({{0.5, 0.1}, {1.0, 0.9}});
  SlopeRange r = subgradient_range(m, 0.5);
  EXPECT_NEAR(r.low, 0.2, 1e-12);
  EXPECT_NEAR(r.high, 1.6, 1e-12);
}

TEST(Subgradient, BeyondXBar) {
  EXPECT_EQ(code_of([] { subgradient_range(SingleLottery{0.5, 0.5}.menu(), 0.7); }),
            ErrorCode::unavailable);
}

TEST(MenuProperty, InvariantsOfRandomProperizedPoints) {
  Gen g(21);
  for (int trial = 0; trial < 5000; ++trial) {
    auto raw = g.raw_points();
    PricingMenu m = properize(raw);
    auto pts = m.breakpoints();
    ASSERT_EQ(pts.front().x, 0.0);
    ASSERT_EQ(pts.front().price, 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      ASSERT_GT(pts[i].x, pts[i - 1].x);
      ASSERT_GE(pts[i].price, pts[i - 1].price);
    }
    for (std::size_t i = 1; i < m.segment_count(); ++i) ASSERT_GE(m.slope(i), m.slope(i - 1));
    double top = 0.0;
    for (const auto& b : raw) top = std::max(top, b.x);
    ASSERT_EQ(m.x_bar(), top);
    // Envelope sits on or below every raw point.
    for (const auto& b : raw) ASSERT_LE(*m.price(b.x), b.price + 1e-12);
    ASSERT_EQ(properize(m.breakpoints()), m);
  }
}

TEST(MenuProperty, DemandIsMonotoneAndOptimal) {
  Gen g(22);
  for (int trial = 0; trial < 5000; ++trial) {
    PricingMenu m = g.menu();
    double w = g.coin(0.3) && m.segment_count() ? m.slope(g.index(m.segment_count()))
                                                : g.range(-0.2, 2.0);
    double w2 = g.range(w, 2.5);
    ASSERT_LE(demand(m, w), demand(m, w2));
    double x = demand(m, w);
    double best = x * w - *m.price(x);
    for (int k = 0; k <= 100; ++k) {
      double y = std::min(m.x_bar(), m.x_bar() * k / 100.0);
      ASSERT_LE(y * w - *m.price(y), best + 1e-12);
    }
  }
}

TEST(MenuProperty, DemandPicksLargestMaximizerAtKinks) {
  Gen g(23);
  for (int trial = 0; trial < 2000; ++trial) {
    PricingMenu m = g.menu();
    if (m.segment_count() == 0) continue;
    std::size_t i = g.index(m.segment_count());
    double w = m.slope(i);
    // At a segment's own slope the whole segment is optimal; its right end
    // (or further, if later segments share the slope) must be chosen.
    ASSERT_GE(demand(m, w), m.breakpoints()[i + 1].x);
  }
}
