#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "duopoly/menus.hpp"

namespace testing_support {

// Plain bisection for a sign change of f on [lo, hi]; independent of the
// library's numeric helpers.
inline double root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct GridMax {
  double x;
  double value;
};

// Brute-force argmax on an even grid; ties go to the larger x.
inline GridMax grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                           double step) {
  GridMax best{lo, f(lo)};
  auto n = static_cast<long>(std::llround((hi - lo) / step));
  for (long i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    double v = f(x);
    if (v >= best.value) best = {x, v};
  }
  return best;
}

// Hand-rolled generator of menus, lotteries and values for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(double p = 0.5) { return unit() < p; }

  // Convex menu built from sorted marginal prices in [0, scale].
  duopoly::PricingMenu menu(std::size_t max_options = 6, double scale = 1.5) {
    std::size_t k = 1 + index(max_options);
    std::vector<double> xs(k), slopes(k);
    for (auto& x : xs) x = range(0.01, 1.0);
    for (auto& s : slopes) s = range(0.0, scale);
    std::sort(xs.begin(), xs.end());
    std::sort(slopes.begin(), slopes.end());
    if (coin()) xs.back() = 1.0;
    std::vector<duopoly::Breakpoint> raw;
    double prev = 0.0, price = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      price += slopes[i] * (xs[i] - prev);
      prev = xs[i];
      raw.push_back({xs[i], price});
    }
    return duopoly::properize(raw);
  }

  duopoly::SingleLottery lottery(double scale = 1.0, bool allow_certain = true) {
    double z = range(0.02, allow_certain ? 1.0 : 0.98);
    if (allow_certain && coin(0.1)) z = 1.0;
    return {z, range(0.0, scale)};
  }

  // Arbitrary points, not necessarily convex or monotone.
  std::vector<duopoly::Breakpoint> raw_points() {
    std::vector<duopoly::Breakpoint> raw;
    std::size_t k = 1 + index(7);
    for (std::size_t i = 0; i < k; ++i) {
      double x = !raw.empty() && coin(0.2) ? raw.back().x : unit();
      raw.push_back({x, unit()});
    }
    return raw;
  }

  // Values that frequently sit on a kink of the menu or at Alice's price.
  double value(const duopoly::SingleLottery& a, const duopoly::PricingMenu& b, double v_max) {
    double u = unit();
    if (u < 0.1) return a.p;
    if (u < 0.2 && b.segment_count() > 0) return b.slope(index(b.segment_count()));
    return range(0.0, v_max);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
