#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace duopoly {

struct Breakpoint {
  double x;
  double price;
  bool operator==(const Breakpoint&) const = default;
};

// Absolute tolerance for collinearity and slope comparisons.
inline constexpr double kPriceTol = 1e-12;

// Proper pricing function: piecewise-linear, convex, nondecreasing on
// [0, x_bar], starting at (0, 0). Allocations above x_bar are not offered.
// Only properize() builds one, so every instance satisfies the invariants.
class PricingMenu {
 public:
  // The empty menu: only x = 0 at price 0.
  PricingMenu();

  std::span<const Breakpoint> breakpoints() const { return points_; }
  double x_bar() const { return points_.back().x; }
  std::size_t segment_count() const { return slopes_.size(); }
  // Slope of segment i, joining breakpoint i to breakpoint i+1.
  double slope(std::size_t i) const { return slopes_.at(i); }
  std::span<const double> slopes() const { return slopes_; }

  // Price of allocation x; nullopt when x is not offered.
  std::optional<double> price(double x) const;
  // Same, but throws unavailable instead of returning nullopt.
  double price_or_throw(double x) const;

  bool operator==(const PricingMenu& other) const {
    return points_ == other.points_;
  }

 private:
  friend PricingMenu properize(std::span<const Breakpoint> raw);
  std::vector<Breakpoint> points_;
  std::vector<double> slopes_;
};

PricingMenu properize(std::span<const Breakpoint> raw);
PricingMenu properize(std::initializer_list<Breakpoint> raw);

PricingMenu fixed_price(double q);
PricingMenu give_away();

struct SingleLottery {
  double z;
  double p;

  double a() const { return p * z; }
  PricingMenu menu() const;
};

// Validates z in (0,1] and p >= 0.
SingleLottery make_lottery(double z, double p);

// Recovers the lottery behind a one-option menu, if it is one.
std::optional<SingleLottery> as_single_lottery(const PricingMenu& m);

// Largest maximizer of x*w - M(x); w = +infinity gives x_bar.
double demand(const PricingMenu& m, double w);

// Buyer surplus at the demanded allocation, max_x (x*w - M(x)).
double surplus(const PricingMenu& m, double w);

PricingMenu lower_convex_envelope(const PricingMenu& m);

struct SlopeRange {
  double low;
  double high;
};
SlopeRange subgradient_range(const PricingMenu& m, double x);

std::string describe(const PricingMenu& m);

}  // namespace duopoly
