#include "duopoly/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "duopoly/error.hpp"
#include "duopoly/numeric.hpp"

namespace duopoly::io {

using nlohmann::json;

namespace {

std::vector<double> number_list(const json& j, const char* field,
                                std::size_t arity) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw ParseError(std::string("missing array field '") + field + "'");
  }
  std::vector<double> out;
  for (const json& x : j[field]) {
    if (!x.is_number()) throw ParseError(std::string("'") + field + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  if (arity != 0 && out.size() != arity) {
    throw ParseError(std::string("'") + field + "' needs " + std::to_string(arity) +
                     " entries");
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json rounded(const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      json out = json::object();
      for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
      return out;
    }
    case json::value_t::array: {
      json out = json::array();
      for (const json& x : j) out.push_back(rounded(x));
      return out;
    }
    case json::value_t::number_float: {
      double x = j.get<double>();
      if (std::isnan(x)) return nullptr;
      if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
      return numeric::round_sig12(x);
    }
    default:
      return j;
  }
}

}  // namespace

std::size_t default_grid_size() {
  const char* env = std::getenv("DUOPOLY_GRID");
  if (env == nullptr || *env == '\0') return kDefaultGridSize;
  char* end = nullptr;
  unsigned long long n = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || n < 3) {
    throw ParseError("DUOPOLY_GRID must be an integer >= 3");
  }
  return static_cast<std::size_t>(n);
}

ValueDistribution parse_distribution(std::string_view text, std::size_t grid_size) {
  if (text == "uniform01") return ValueDistribution::uniform(0.0, 1.0, grid_size);
  if (text == "exp1") return ValueDistribution::exponential(1.0, grid_size);
  if (text == "pointmass1") return ValueDistribution::point_mass(1.0);
  return distribution_from_json(parse_json(text), grid_size);
}

ValueDistribution distribution_from_json(const json& j, std::size_t grid_size) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw ParseError("distribution needs a string 'family'");
  }
  if (j.contains("grid")) {
    if (!j["grid"].is_number_unsigned()) throw ParseError("'grid' must be a positive integer");
    grid_size = j["grid"].get<std::size_t>();
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "uniform") {
      auto p = number_list(j, "params", 2);
      return ValueDistribution::uniform(p[0], p[1], grid_size);
    }
    if (family == "exp") {
      auto p = number_list(j, "params", 1);
      return ValueDistribution::exponential(p[0], grid_size);
    }
    if (family == "pareto") {
      auto p = number_list(j, "params", 3);
      return ValueDistribution::truncated_pareto(p[0], p[1], p[2], grid_size);
    }
    if (family == "mixture") {
      auto p = number_list(j, "params", 5);
      return ValueDistribution::uniform_mixture(p[0], p[1], p[2], p[3], p[4], grid_size);
    }
    if (family == "pointmass") {
      auto p = number_list(j, "params", 1);
      return ValueDistribution::point_mass(p[0]);
    }
    if (family == "discrete") {
      if (!j.contains("atoms") || !j["atoms"].is_array()) {
        throw ParseError("discrete distribution needs 'atoms'");
      }
      std::vector<Atom> atoms;
      for (const json& a : j["atoms"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
          throw ParseError("each atom must be [value, mass]");
        }
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      }
      return ValueDistribution::discrete(std::move(atoms));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown distribution family '" + family + "'");
}

PricingMenu parse_menu(std::string_view text) { return menu_from_json(parse_json(text)); }

PricingMenu menu_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("menu must be a JSON object");
  try {
    if (j.contains("breakpoints")) {
      std::vector<Breakpoint> raw;
      for (const json& b : j["breakpoints"]) {
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
          throw ParseError("each breakpoint must be [x, price]");
        }
        raw.push_back({b[0].get<double>(), b[1].get<double>()});
      }
      return properize(raw);
    }
    if (j.contains("lottery")) {
      const json& l = j["lottery"];
      if (!l.is_object() || !l.contains("z") || !l.contains("p") ||
          !l["z"].is_number() || !l["p"].is_number()) {
        throw ParseError("lottery needs numeric 'z' and 'p'");
      }
      return make_lottery(l["z"].get<double>(), l["p"].get<double>()).menu();
    }
    if (j.contains("fixed_price")) {
      if (!j["fixed_price"].is_number()) throw ParseError("fixed_price must be a number");
      return fixed_price(j["fixed_price"].get<double>());
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("menu needs 'breakpoints', 'lottery' or 'fixed_price'");
}

SingleLottery parse_lottery_pair(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("lottery must be given as z,p");
  std::string zs(text.substr(0, comma)), ps(text.substr(comma + 1));
  char* end = nullptr;
  double z = std::strtod(zs.c_str(), &end);
  if (zs.empty() || *end != '\0') throw ParseError("bad lottery probability");
  double p = std::strtod(ps.c_str(), &end);
  if (ps.empty() || *end != '\0') throw ParseError("bad lottery price");
  try {
    return make_lottery(z, p);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const PricingMenu& m) {
  json pts = json::array();
  for (const Breakpoint& b : m.breakpoints()) pts.push_back({b.x, b.price});
  return {{"breakpoints", pts}, {"x_bar", m.x_bar()}};
}

json to_json(const BuyerChoice& c) {
  return {{"order", std::string(to_string(c.order))},
          {"x_first", c.x_first},
          {"x_second", c.x_second},
          {"utility", c.utility},
          {"pay_alice", c.pay_alice},
          {"pay_bob", c.pay_bob},
          {"alloc_alice", c.alloc_alice},
          {"alloc_bob", c.alloc_bob}};
}

json to_json(const SingleLottery& l) {
  return {{"z", l.z}, {"p", l.p}, {"a", l.a()}};
}

std::string dump(const json& j) { return rounded(j).dump(2); }

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace duopoly::io
