#include "duopoly/sampling.hpp"

#include <algorithm>
#include <vector>

namespace duopoly {

PricingMenu random_menu(std::mt19937_64& rng, std::size_t max_breakpoints,
                        double price_scale) {
  std::uniform_int_distribution<std::size_t> count(
      1, std::max<std::size_t>(1, max_breakpoints - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t k = count(rng);
  std::vector<double> xs(k), slopes(k);
  for (auto& x : xs) x = unit(rng);
  for (auto& s : slopes) s = unit(rng) * price_scale;
  std::sort(xs.begin(), xs.end());
  std::sort(slopes.begin(), slopes.end());
  if (unit(rng) < 0.5) xs.back() = 1.0;
  std::vector<Breakpoint> raw;
  double prev_x = 0.0, price = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    price += slopes[i] * (xs[i] - prev_x);
    prev_x = xs[i];
    raw.push_back({xs[i], price});
  }
  return properize(raw);
}

PricingMenu perturb_menu(const PricingMenu& m, std::mt19937_64& rng, double sigma,
                         double price_scale, std::size_t max_breakpoints) {
  std::vector<Breakpoint> raw(m.breakpoints().begin() + 1, m.breakpoints().end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, sigma);
  double move = unit(rng);
  if (raw.empty() || (move < 0.1 && raw.size() + 1 < max_breakpoints)) {
    double x = std::max(unit(rng), 1e-6);
    double base = m.price(x).value_or(m.breakpoints().back().price +
                                      price_scale * (x - m.x_bar()));
    raw.push_back({x, std::max(0.0, base + noise(rng) * price_scale)});
  } else if (move < 0.2 && raw.size() > 1) {
    raw.erase(raw.begin() +
              static_cast<std::ptrdiff_t>(rng() % raw.size()));
  } else {
    Breakpoint& b = raw[rng() % raw.size()];
    if (move < 0.6) {
      b.x = std::clamp(b.x + noise(rng), 1e-6, 1.0);
    } else {
      b.price = std::max(0.0, b.price + noise(rng) * price_scale);
    }
  }
  return properize(raw);
}

SingleLottery random_lottery(std::mt19937_64& rng, double price_scale) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double z = std::max(1e-3, unit(rng));
  if (unit(rng) < 0.1) z = 1.0;
  return SingleLottery{z, unit(rng) * price_scale};
}

}  // namespace duopoly
