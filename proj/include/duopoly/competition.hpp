#pragma once

#include <cstddef>
#include <vector>

#include "duopoly/buyer.hpp"
#include "duopoly/distributions.hpp"
#include "duopoly/menus.hpp"

namespace duopoly {

struct TracePoint {
  double v;
  BuyerChoice choice;
};

struct CompetitionOutcome {
  double rev_alice = 0.0;
  double rev_bob = 0.0;
  double alloc_alice = 0.0;
  double alloc_bob = 0.0;
  std::vector<TracePoint> trace;
};

struct RevenueOptions {
  // Number of evenly spaced probe points over [0, support_max]; 0 means the
  // distribution's own grid size.
  std::size_t grid_points = 0;
  bool keep_trace = false;
};

// Expected payments and allocations when the buyer best-responds to (A, B).
// Payments are piecewise constant in v, so each grid cell contributes
// payment * (F(hi) - F(lo)) once the plan at both ends agrees; cells where
// the plan changes are split until the switch point is pinned down.
CompetitionOutcome revenues(const PricingMenu& alice, const PricingMenu& bob,
                            const ValueDistribution& d,
                            const RevenueOptions& opts = {});

// Bob's revenue from posting q against Alice's lottery, in closed form.
double rev_fixed_price(const SingleLottery& alice, double q,
                       const ValueDistribution& d);

// Revenue of a monopolist selling menu m to a buyer drawn from d.
double monopoly_revenue(const PricingMenu& m, const ValueDistribution& d,
                        std::size_t grid_points = 0);

// The prior Bob effectively faces once Alice's lottery is fixed: types in
// (p, s) are squeezed to a + (1-z)v, types from s on keep their value with
// probability 1-z and drop to 0 otherwise.
class AuxiliaryDistribution {
 public:
  AuxiliaryDistribution(ValueDistribution base, SingleLottery alice, double s);

  const ValueDistribution& base() const { return base_; }
  const SingleLottery& lottery() const { return alice_; }
  // Threshold actually used; an infinite threshold is placed just above the
  // support.
  double s() const { return s_; }
  bool infinite_threshold() const { return infinite_; }
  double squeeze_end() const;
  double atom_at_zero() const;

  double cdf(double v) const;
  double pdf(double v) const;
  double gamma(double v) const;
  // Same curve written piece by piece from the base prior.
  double gamma_by_pieces(double v) const;

 private:
  ValueDistribution base_;
  SingleLottery alice_;
  double s_;
  bool infinite_;
};

AuxiliaryDistribution aux_distribution(const ValueDistribution& d,
                                       const SingleLottery& alice, double s);

double monopoly_revenue(const PricingMenu& m, const AuxiliaryDistribution& ds,
                        std::size_t grid_points = 0);

struct OneSellerCheck {
  double s = 0.0;
  double monopolist_revenue = 0.0;  // Bob's menu sold alone under D_s
  double duopoly_revenue = 0.0;     // Bob's revenue next to Alice under D
  double gap = 0.0;
  std::size_t points_checked = 0;
  std::size_t allocation_mismatches = 0;
};

struct OneSellerOptions {
  std::size_t grid_points = 0;
  // Probe count for the pointwise allocation comparison; 0 means the prior's
  // grid size.
  std::size_t allocation_points = 0;
};

OneSellerCheck check_oneseller(const SingleLottery& alice, const PricingMenu& bob,
                               const ValueDistribution& d,
                               const OneSellerOptions& opts = {});

}  // namespace duopoly
