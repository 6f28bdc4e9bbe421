#include "duopoly/buyer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duopoly/error.hpp"
#include "duopoly/numeric.hpp"

namespace duopoly {

namespace {

struct Plan {
  double x1, x2;
  double utility;
  double pay1, pay2;
  double alloc1, alloc2;
};

// The continuation value after a failed first lottery does not depend on x1,
// so the first-stage problem is a plain demand problem at value v - u2.
Plan nested_plan(const PricingMenu& first, const PricingMenu& second, double v) {
  Plan p{};
  p.x2 = demand(second, v);
  double price2 = second.price_or_throw(p.x2);
  double u2 = std::max(0.0, p.x2 * v - price2);
  p.x1 = demand(first, v - u2);
  p.pay1 = first.price_or_throw(p.x1);
  p.utility = p.x1 * v - p.pay1 + (1.0 - p.x1) * u2;
  p.pay2 = (1.0 - p.x1) * price2;
  p.alloc1 = p.x1;
  p.alloc2 = (1.0 - p.x1) * p.x2;
  return p;
}

BuyerChoice as_choice(const Plan& p, Order order) {
  BuyerChoice c;
  c.order = order;
  c.x_first = p.x1;
  c.x_second = p.x2;
  c.utility = p.utility;
  if (order == Order::bob_first) {
    c.pay_bob = p.pay1;
    c.pay_alice = p.pay2;
    c.alloc_bob = p.alloc1;
    c.alloc_alice = p.alloc2;
  } else {
    c.pay_alice = p.pay1;
    c.pay_bob = p.pay2;
    c.alloc_alice = p.alloc1;
    c.alloc_bob = p.alloc2;
  }
  return c;
}

}  // namespace

std::string_view to_string(Order o) {
  return o == Order::bob_first ? "bob-first" : "alice-first";
}

double utility_bob_first(const SingleLottery& alice, const PricingMenu& bob,
                         double x, double v) {
  double price = bob.price_or_throw(x);
  return x * v - price + (1.0 - x) * std::max(0.0, alice.z * v - alice.a());
}

double utility_alice_first(const SingleLottery& alice, const PricingMenu& bob,
                           double x, double v) {
  double price = bob.price_or_throw(x);
  return alice.z * v - alice.a() + (1.0 - alice.z) * (x * v - price);
}

BuyerChoice best_response(const PricingMenu& alice, const PricingMenu& bob,
                          double v) {
  if (std::isnan(v) || v < 0.0) {
    throw DomainError(ErrorCode::invalid_argument, "value must be >= 0");
  }
  BuyerChoice ba = as_choice(nested_plan(bob, alice, v), Order::bob_first);
  BuyerChoice ab = as_choice(nested_plan(alice, bob, v), Order::alice_first);

  double tol = kUtilityTol * std::max(1.0, v);
  if (ab.utility > ba.utility + tol) return ab;
  if (ba.utility > ab.utility + tol) return ba;
  if (ab.alloc_bob > ba.alloc_bob + kUtilityTol) return ab;
  if (ba.alloc_bob > ab.alloc_bob + kUtilityTol) return ba;
  if (ab.alloc_alice > ba.alloc_alice + kUtilityTol) return ab;
  return ba;
}

Classification classify(const SingleLottery& alice, const PricingMenu& bob,
                        double v) {
  BuyerChoice c = best_response(alice.menu(), bob, v);
  Classification out{c.order, true};
  double x = c.bob_option();
  if (x > 0.0) {
    double bang = bob.price_or_throw(x) / x;
    if (c.order == Order::bob_first) {
      out.consistent = bang <= std::min(alice.p, v) + 1e-9;
    } else {
      out.consistent = bang > alice.p - 1e-9 && bang < v + 1e-9;
    }
  }
  return out;
}

double ab_start(const SingleLottery& alice, const PricingMenu& bob,
                double v_max) {
  const double inf = std::numeric_limits<double>::infinity();
  if (!(v_max >= alice.p)) return inf;
  PricingMenu a = alice.menu();
  auto alice_first = [&](double v) {
    return best_response(a, bob, v).order == Order::alice_first;
  };
  if (!alice_first(v_max)) return inf;
  if (alice_first(alice.p)) return alice.p;
  double tol = 1e-9 * std::max(1.0, v_max);
  return numeric::bisect(alice_first, alice.p, v_max, tol).lo;
}

}  // namespace duopoly
