#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "duopoly/buyer.hpp"
#include "duopoly/distributions.hpp"
#include "duopoly/menus.hpp"

namespace duopoly::io {

// Malformed user input (bad JSON, unknown family, wrong arity).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid size from DUOPOLY_GRID, falling back to the library default.
std::size_t default_grid_size();

// Accepts a JSON object or one of the shorthands uniform01, exp1, pointmass1.
ValueDistribution parse_distribution(std::string_view text,
                                     std::size_t grid_size = default_grid_size());
ValueDistribution distribution_from_json(const nlohmann::json& j,
                                         std::size_t grid_size);

// {"breakpoints": [[x, price], ...]}, {"lottery": {"z": .., "p": ..}} or
// {"fixed_price": q}.
PricingMenu parse_menu(std::string_view text);
PricingMenu menu_from_json(const nlohmann::json& j);

// "z,p"
SingleLottery parse_lottery_pair(std::string_view text);

nlohmann::json to_json(const PricingMenu& m);
nlohmann::json to_json(const BuyerChoice& c);
nlohmann::json to_json(const SingleLottery& l);

// Serializes with every number rounded to 12 significant digits and
// infinities written as the strings "inf" / "-inf".
std::string dump(const nlohmann::json& j);

// %.12g
std::string format_number(double x);

}  // namespace duopoly::io
