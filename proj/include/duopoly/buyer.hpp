#pragma once

#include <string_view>

#include "duopoly/menus.hpp"

namespace duopoly {

enum class Order { bob_first, alice_first };
std::string_view to_string(Order o);

struct BuyerChoice {
  Order order = Order::bob_first;
  double x_first = 0.0;
  double x_second = 0.0;
  double utility = 0.0;
  double pay_alice = 0.0;
  double pay_bob = 0.0;
  double alloc_alice = 0.0;
  double alloc_bob = 0.0;

  // Allocation taken at Bob when he is reached.
  double bob_option() const {
    return order == Order::bob_first ? x_first : x_second;
  }
  bool same_plan(const BuyerChoice& o) const {
    return order == o.order && x_first == o.x_first && x_second == o.x_second;
  }
};

// Utility tolerance used when comparing the two visiting orders.
inline constexpr double kUtilityTol = 1e-12;

// Buy x from Bob, fall back to Alice's lottery on failure.
double utility_bob_first(const SingleLottery& alice, const PricingMenu& bob,
                         double x, double v);
// Take Alice's lottery, fall back to x from Bob on failure.
double utility_alice_first(const SingleLottery& alice, const PricingMenu& bob,
                           double x, double v);

// Optimal plan of a buyer with value v who may visit the sellers in either
// order and returns to the second only if the first lottery fails. Ties:
// utility, then Bob's expected allocation, then Alice's, then bob-first.
BuyerChoice best_response(const PricingMenu& alice, const PricingMenu& bob,
                          double v);

struct Classification {
  Order order;
  // Bang-per-buck of the Bob option is where the ordering structure says it
  // should be.
  bool consistent;
};
Classification classify(const SingleLottery& alice, const PricingMenu& bob,
                        double v);

// Threshold type between bob-first and alice-first buyers on [p, v_max];
// +infinity when every type up to v_max buys from Bob first. The returned
// point is the largest probed bob-first type.
double ab_start(const SingleLottery& alice, const PricingMenu& bob,
                double v_max);

}  // namespace duopoly
