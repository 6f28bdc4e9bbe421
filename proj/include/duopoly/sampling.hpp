#pragma once

#include <cstddef>
#include <random>

#include "duopoly/menus.hpp"

namespace duopoly {

// Random proper menu with 1 to max_breakpoints - 1 offered options and
// marginal prices drawn from [0, price_scale]. Half of the draws offer x = 1.
PricingMenu random_menu(std::mt19937_64& rng, std::size_t max_breakpoints,
                        double price_scale);

// One local move: shift an option's allocation or price, add an option or
// drop one. The result is re-properized.
PricingMenu perturb_menu(const PricingMenu& m, std::mt19937_64& rng, double sigma,
                         double price_scale, std::size_t max_breakpoints);

SingleLottery random_lottery(std::mt19937_64& rng, double price_scale);

}  // namespace duopoly
