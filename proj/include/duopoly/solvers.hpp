#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "duopoly/competition.hpp"
#include "duopoly/distributions.hpp"
#include "duopoly/menus.hpp"

namespace duopoly {

struct Theorem31Options {
  // Amount subtracted from the root price; defaults to 1e-6 * v* for
  // continuous priors and 0 for atoms.
  std::optional<double> nudge;
  bool check_regularity = true;
};

// Alice's lottery with z = 1/2 and p the smallest price where the revenue
// curve reaches half the monopoly benchmark.
SingleLottery construct_theorem31(const ValueDistribution& d,
                                  const Theorem31Options& opts = {});

struct PostedPrice {
  double q;
  double revenue;
};

// Bob's revenue-maximizing posted price against Alice's lottery; ties go to
// the larger price.
PostedPrice bob_best_posted_price(const SingleLottery& alice,
                                  const ValueDistribution& d);

struct MenuSearchOptions {
  std::size_t budget = 2000;  // total menu evaluations
  std::size_t restarts = 32;
  std::size_t max_breakpoints = 8;
  std::uint64_t seed = 1;
  std::size_t grid_points = 1025;
};

struct BestResponseReport {
  PostedPrice posted{};
  PricingMenu challenger;
  double challenger_revenue = 0.0;
  double margin = 0.0;  // posted revenue minus challenger revenue
  std::size_t evaluations = 0;
};

// Random-restart local search over Bob menus; reports how close the best
// menu found comes to the best posted price.
BestResponseReport bob_menu_search(const SingleLottery& alice,
                                   const ValueDistribution& d,
                                   const MenuSearchOptions& opts = {});

// Pointwise max(B(x), p_hat * x), with the crossing points made explicit.
PricingMenu bottom_properize(const PricingMenu& bob, double p_hat);

struct BottomProperReport {
  double s = 0.0;
  double p_hat = 0.0;
  PricingMenu transformed;
  double rev_before = 0.0;
  double rev_after = 0.0;
};

// p_hat is the bang-per-buck Bob collects from the threshold type.
BottomProperReport bottom_proper_check(const SingleLottery& alice,
                                       const PricingMenu& bob,
                                       const ValueDistribution& d,
                                       std::size_t grid_points = 0);

struct FloorTransformReport {
  double q = 0.0;
  PricingMenu transformed;
  // Both density conditions held on the grid; only then is
  // rev_before <= rev_after expected.
  bool conditions_hold = false;
  double rev_before = 0.0;
  double rev_after = 0.0;
};

FloorTransformReport monopolist_floor_transform(const PricingMenu& m,
                                                double v_star_ref,
                                                const ValueDistribution& d);

// Alice's menu pricing allocation x at the integral of the smallest-branch
// inverse revenue curve at M / (e (1 - t)), for x up to 1 - 1/e. Each
// segment uses the integrand at its left end.
PricingMenu alice_one_over_e_menu(const ValueDistribution& d,
                                  std::size_t grid = 4096);

struct StackelbergOutcome {
  SingleLottery alice_menu{};
  PricingMenu bob_menu;
  double bob_price = 0.0;
  double rev_alice = 0.0;
  double rev_bob = 0.0;
  double monopoly_benchmark = 0.0;
  double ratio_alice = 0.0;
  double ratio_bob = 0.0;
};

StackelbergOutcome stackelberg_outcome(const ValueDistribution& d,
                                       const Theorem31Options& opts = {},
                                       const RevenueOptions& revenue_opts = {});

// Bob's best responses to an arbitrary Alice menu when every buyer has value
// v0. Candidates are posted prices on a grid plus Alice's marginal prices,
// and single lotteries on a coarser grid.
struct PointMassResponseOptions {
  double price_step = 1e-3;
  double lottery_step = 0.02;  // 0 disables lotteries
  double tie_tol = 1e-12;
};

struct PointMassResponse {
  PricingMenu menu;
  bool posted = true;
  double q = 0.0;  // price for posted responses
  double rev_bob = 0.0;
  double rev_alice = 0.0;
};

// Every candidate within tie_tol of the best Bob revenue. Posted prices come
// first, larger prices before smaller ones.
std::vector<PointMassResponse> bob_point_mass_responses(
    const PricingMenu& alice, double v0, const PointMassResponseOptions& opts = {});

struct AliceSearchOptions {
  std::size_t restarts = 64;
  std::size_t iterations = 100;
  std::size_t max_breakpoints = 8;
  std::uint64_t seed = 1;
  PointMassResponseOptions bob{};
};

struct AliceSearchReport {
  PricingMenu best_menu;
  double best_rev_alice = 0.0;
  std::size_t evaluations = 0;
};

// Local search over Alice menus at a point-mass buyer. Alice is credited with
// the most favourable of Bob's tied best responses.
AliceSearchReport alice_menu_search_point_mass(double v0,
                                               const AliceSearchOptions& opts = {});

enum class Seller { alice, bob };
std::string_view to_string(Seller s);

enum class NashStatus { equilibrium_consistent, deviation_found, inconclusive_at_resolution };
std::string_view to_string(NashStatus s);

struct NashReport {
  NashStatus status = NashStatus::inconclusive_at_resolution;
  double rev_alice = 0.0;
  double rev_bob = 0.0;
  std::optional<Seller> deviator;
  std::optional<SingleLottery> deviation;
  double deviation_revenue = 0.0;
};

// Looks for a single-lottery deviation that strictly raises one seller's
// revenue at a point-mass buyer, checking Bob before Alice.
NashReport nash_deviation_search(const PricingMenu& alice, const PricingMenu& bob,
                                 const ValueDistribution& d, double step = 1e-3);

struct SubgradientCheck {
  double z;
  double slope;
  double bound;
  bool ok;
};

struct SubgradientReport {
  double R = 0.0;
  std::vector<SubgradientCheck> checks;
  bool all_ok = true;
};

// R is Bob's best posted-price revenue against Alice's menu: the grid, Alice's
// marginal prices and the prices just below every plan switch located between
// grid points. Slopes are in units of the buyer value. Each
// envelope breakpoint z < 1 - R must have outgoing slope at most R / (1 - z);
// x_bar counts as a breakpoint with infinite outgoing slope.
SubgradientReport subgradient_bound_check(const PricingMenu& alice,
                                          const ValueDistribution& d,
                                          double q_step = 1e-3);

}  // namespace duopoly
