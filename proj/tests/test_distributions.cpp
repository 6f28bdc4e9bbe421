#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "duopoly/distributions.hpp"
#include "duopoly/error.hpp"
#include "support.hpp"

using namespace duopoly;
using testing_support::Gen;

namespace {

const double kE = std::numbers::e;

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

TEST(RevenueCurve, UniformAtPointThree) {
  EXPECT_NEAR(gamma(ValueDistribution::uniform(0, 1), 0.3), 0.21, 1e-15);
}

TEST(RevenueCurve, PointMassSellsAtItsValue) {
  EXPECT_EQ(gamma(ValueDistribution::point_mass(1.0), 1.0), 1.0);
  EXPECT_EQ(gamma(ValueDistribution::point_mass(1.0), std::nextafter(1.0, 2.0)), 0.0);
}

TEST(RevenueCurve, ExponentialAtOne) {
  EXPECT_NEAR(gamma(ValueDistribution::exponential(1.0), 1.0), 1.0 / kE, 1e-12);
}

TEST(RevenueCurve, ZeroAboveSupport) {
  auto u = ValueDistribution::uniform(0, 1);
  EXPECT_EQ(gamma(u, 1.5), 0.0);
  EXPECT_EQ(gamma(u, 0.0), 0.0);
}

TEST(RevenueCurve, DiscreteUsesMassAtOrAbovePrice) {
  auto d = ValueDistribution::discrete({{1.0, 0.5}, {2.0, 0.5}});
  EXPECT_DOUBLE_EQ(gamma(d, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(gamma(d, 1.5), 0.75);
  EXPECT_DOUBLE_EQ(gamma(d, 2.0), 1.0);
}

TEST(MyersonPrice, UniformMatchesGridOracle) {
  auto u = ValueDistribution::uniform(0, 1);
  auto oracle = testing_support::grid_argmax([](double q) { return q * (1 - q); }, 0, 1, 1e-5);
  // Frozen from the oracle: argmax 0.5, peak 0.25.
  ASSERT_NEAR(oracle.x, 0.5, 1e-12);
  EXPECT_NEAR(myerson_price(u), 0.5, 1e-6);
  EXPECT_NEAR(monopoly_revenue(u), 0.25, 1e-12);
}

TEST(MyersonPrice, ExponentialMatchesStationaryPoint) {
  auto e = ValueDistribution::exponential(1.0);
  double oracle = testing_support::root([](double q) { return (1 - q) * std::exp(-q); }, 0.1, 5);
  ASSERT_NEAR(oracle, 1.0, 1e-12);
  EXPECT_NEAR(myerson_price(e), 1.0, 1e-6);
  EXPECT_NEAR(monopoly_revenue(e), 1.0 / kE, 1e-12);
}

TEST(MyersonPrice, PointMass) {
  auto d = ValueDistribution::point_mass(1.0);
  EXPECT_EQ(myerson_price(d), 1.0);
  EXPECT_EQ(monopoly_revenue(d), 1.0);
}

TEST(MyersonPrice, TiesGoToLargerPrice) {
  // Both atoms earn 1: price 1 sells to everyone, price 2 to half.
  auto d = ValueDistribution::discrete({{1.0, 0.5}, {2.0, 0.5}});
  EXPECT_EQ(myerson_price(d), 2.0);
}

TEST(MyersonPrice, DegeneratePriorIsRejected) {
  EXPECT_EQ(code_of([] { myerson_price(ValueDistribution::point_mass(0.0)); }),
            ErrorCode::degenerate_distribution);
}

TEST(VirtualValue, Uniform) {
  auto u = ValueDistribution::uniform(0, 1);
  EXPECT_NEAR(virtual_value(u, 0.75), 0.5, 1e-12);
  EXPECT_NEAR(virtual_value(u, 0.5), 0.0, 1e-12);
}

TEST(VirtualValue, Exponential) {
  EXPECT_NEAR(virtual_value(ValueDistribution::exponential(1.0), 2.0), 1.0, 1e-9);
}

TEST(VirtualValue, Errors) {
  EXPECT_EQ(code_of([] { virtual_value(ValueDistribution::point_mass(1.0), 0.5); }),
            ErrorCode::unsupported);
  EXPECT_EQ(code_of([] { virtual_value(ValueDistribution::uniform(0.5, 1.0), 0.2); }),
            ErrorCode::zero_density);
}

TEST(Regularity, UniformIsBoth) {
  EXPECT_EQ(classify_regularity(ValueDistribution::uniform(0, 1)).label, Regularity::both);
}

TEST(Regularity, ExponentialMatchesSampledPredicates) {
  // Oracle: sample phi = v - 1 and phi * f = (v - 1) e^{-v} on the same grid
  // and test monotonicity step by step.
  auto e = ValueDistribution::exponential(1.0);
  bool phi_up = true, psi_up = true;
  double prev_phi = -1e300, prev_psi = -1e300;
  for (std::size_t i = 0; i < e.grid_size(); ++i) {
    double v = e.grid_point(i);
    double phi = v - 1.0, psi = (v - 1.0) * std::exp(-v);
    phi_up = phi_up && phi >= prev_phi - 1e-9;
    psi_up = psi_up && psi >= prev_psi - 1e-9;
    prev_phi = phi;
    prev_psi = psi;
  }
  ASSERT_TRUE(phi_up);
  ASSERT_FALSE(psi_up);
  RegularityReport r = classify_regularity(e);
  EXPECT_EQ(r.regular, phi_up);
  EXPECT_EQ(r.dmr, psi_up);
  EXPECT_EQ(r.label, Regularity::regular);
}

TEST(Regularity, SeparatedMixtureIsNeither) {
  auto m = ValueDistribution::uniform_mixture(0, 1, 10, 11, 0.5, 20001);
  EXPECT_EQ(classify_regularity(m).label, Regularity::neither);
}

TEST(Regularity, DiscreteUnsupported) {
  EXPECT_EQ(code_of([] { classify_regularity(ValueDistribution::point_mass(1.0)); }),
            ErrorCode::unsupported);
}

TEST(GammaInverse, UniformPeak) {
  EXPECT_NEAR(gamma_inverse(ValueDistribution::uniform(0, 1), 0.25), 0.5, 1e-6);
}

TEST(GammaInverse, UniformAtBenchmarkOverE) {
  // Oracle: smaller root of v(1 - v) = 1/(4e) by bisection, frozen as
  // 0.10246995.
  double y = 0.25 / kE;
  double oracle = testing_support::root([&](double v) { return v * (1 - v) - y; }, 0.0, 0.5);
  ASSERT_NEAR(oracle, 0.10246995, 1e-8);
  EXPECT_NEAR(gamma_inverse(ValueDistribution::uniform(0, 1), y), 0.10246995, 1e-8);
}

TEST(GammaInverse, ZeroTarget) {
  EXPECT_EQ(gamma_inverse(ValueDistribution::uniform(0, 1), 0.0), 0.0);
}

TEST(GammaInverse, AboveBenchmarkIsOutOfRange) {
  EXPECT_EQ(code_of([] { gamma_inverse(ValueDistribution::uniform(0, 1), 0.26); }),
            ErrorCode::out_of_range);
}

TEST(GammaInverse, DiscreteIsExact) {
  auto d = ValueDistribution::discrete({{1.0, 0.5}, {2.0, 0.5}});
  // On [0, 1] the curve is q itself.
  EXPECT_DOUBLE_EQ(gamma_inverse(d, 0.6), 0.6);
}

TEST(Distribution, CdfAndDensityInvariants) {
  for (const auto& d : {ValueDistribution::uniform(0, 1), ValueDistribution::exponential(1.0),
                        ValueDistribution::truncated_pareto(2, 1, 10),
                        ValueDistribution::uniform_mixture(0, 1, 10, 11, 0.5)}) {
    SCOPED_TRACE(d.name());
    EXPECT_EQ(d.cdf(-1.0), 0.0);
    EXPECT_NEAR(d.cdf(d.support_max()), 1.0, 1e-12);
    double prev = 0.0;
    for (std::size_t i = 0; i < d.grid_size(); ++i) {
      double v = d.grid_point(i);
      EXPECT_GE(d.pdf(v), 0.0);
      double c = d.cdf(v);
      ASSERT_GE(c, prev);
      prev = c;
    }
    // Trapezoid over cells split at the density's jumps, using one-sided
    // densities at each cell end.
    std::vector<double> cuts;
    for (std::size_t i = 0; i < d.grid_size(); ++i) cuts.push_back(d.grid_point(i));
    for (double k : d.knots()) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    double integral = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      double lo = cuts[i - 1], hi = cuts[i];
      if (hi <= lo) continue;
      double left = d.pdf(std::nextafter(lo, hi)), right = d.pdf(std::nextafter(hi, lo));
      integral += 0.5 * (hi - lo) * (left + right);
    }
    EXPECT_NEAR(integral, 1.0, 1e-8);
  }
}

TEST(Distribution, ExponentialTruncationPoint) {
  auto e = ValueDistribution::exponential(1.0);
  EXPECT_NEAR(e.support_max(), -std::log(1e-10), 1e-9);
}

TEST(Distribution, DiscreteAtomsMustSumToOne) {
  EXPECT_EQ(code_of([] { ValueDistribution::discrete({{1.0, 0.5}, {2.0, 0.4}}); }),
            ErrorCode::invalid_argument);
}

TEST(DistributionProperty, RevenueCurveIdentityOnRandomFamilies) {
  Gen g(11);
  for (int trial = 0; trial < 20; ++trial) {
    double a = g.range(0, 2), b = a + g.range(0.1, 3);
    auto d = g.coin() ? ValueDistribution::uniform(a, b, 20001)
                      : ValueDistribution::exponential(g.range(0.2, 5), 20001);
    SCOPED_TRACE(d.name());
    for (std::size_t i = 0; i < d.grid_size(); i += 97) {
      double v = d.grid_point(i);
      ASSERT_LE(std::fabs(gamma(d, v) - v * (1 - d.cdf(v))), 1e-12);
    }
  }
}

TEST(DistributionProperty, InverseIsLeftInverseAndMyersonIsMaximal) {
  Gen g(12);
  for (int trial = 0; trial < 20; ++trial) {
    double a = g.range(0, 2), b = a + g.range(0.1, 3);
    auto d = g.coin() ? ValueDistribution::uniform(a, b, 20001)
                      : ValueDistribution::exponential(g.range(0.2, 5), 20001);
    SCOPED_TRACE(d.name());
    const double m = monopoly_revenue(d);
    for (int k = 0; k < 25; ++k) {
      double y = g.range(0, m);
      ASSERT_NEAR(gamma(d, gamma_inverse(d, y)), y, 1e-8);
    }
    const double vs = myerson_price(d);
    for (std::size_t i = 0; i < d.grid_size(); ++i) {
      ASSERT_GE(gamma(d, vs), gamma(d, d.grid_point(i)) - 1e-9);
    }
  }
}

TEST(DistributionProperty, RegularLabelMeansMonotoneVirtualValue) {
  Gen g(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = ValueDistribution::truncated_pareto(g.range(1.2, 4), g.range(0.5, 2),
                                                 g.range(3, 20), 20001);
    SCOPED_TRACE(d.name());
    if (!classify_regularity(d).regular) continue;
    for (int k = 0; k < 200; ++k) {
      double v = g.range(d.params()[1], d.support_max());
      double w = g.range(v, d.support_max());
      ASSERT_LE(virtual_value(d, v), virtual_value(d, w) + 1e-9);
    }
  }
}
