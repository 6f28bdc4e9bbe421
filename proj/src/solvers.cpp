#include "duopoly/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "duopoly/buyer.hpp"
#include "duopoly/error.hpp"
#include "duopoly/numeric.hpp"
#include "duopoly/sampling.hpp"

namespace duopoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovement = 1e-9;

std::size_t steps_for(double step) {
  return static_cast<std::size_t>(std::llround(1.0 / step));
}

double psi(const ValueDistribution& d, double v) {
  return v * d.pdf(v) - (1.0 - d.cdf(v));
}

}  // namespace

std::string_view to_string(Seller s) { return s == Seller::alice ? "alice" : "bob"; }

std::string_view to_string(NashStatus s) {
  switch (s) {
    case NashStatus::equilibrium_consistent: return "equilibrium-consistent";
    case NashStatus::deviation_found: return "deviation-found";
    case NashStatus::inconclusive_at_resolution: return "inconclusive-at-resolution";
  }
  return "inconclusive-at-resolution";
}

SingleLottery construct_theorem31(const ValueDistribution& d,
                                  const Theorem31Options& opts) {
  const double m = monopoly_revenue(d);
  if (d.is_continuous() && opts.check_regularity &&
      classify_regularity(d).label == Regularity::neither) {
    throw DomainError(ErrorCode::hypothesis_unmet,
                      "prior is neither regular nor DMR");
  }
  double p = gamma_inverse(d, m / 2.0);
  double nudge =
      opts.nudge.value_or(d.is_continuous() ? 1e-6 * myerson_price(d) : 0.0);
  if (nudge < 0.0) throw DomainError(ErrorCode::invalid_argument, "nudge < 0");
  return SingleLottery{0.5, std::max(0.0, p - nudge)};
}

PostedPrice bob_best_posted_price(const SingleLottery& alice,
                                  const ValueDistribution& d) {
  const double tol = 1e-12 * std::max(1.0, monopoly_revenue(d));
  auto rev = [&](double q) { return rev_fixed_price(alice, q, d); };

  std::vector<double> candidates;
  if (!d.is_continuous()) {
    for (const Atom& a : d.atoms()) candidates.push_back(a.value);
    candidates.push_back(alice.p);
  } else {
    const double p = alice.p;
    const double v_star = myerson_price(d);
    auto table = d.gamma_table();
    const std::size_t n = d.grid_size();
    // Best grid index on each side of p, scanning down so ties keep the
    // larger price.
    std::optional<std::size_t> low_best, high_best;
    for (std::size_t i = n; i-- > 0;) {
      double q = d.grid_point(i);
      double r = q <= p ? table[i] : (1.0 - alice.z) * table[i];
      auto& slot = q <= p ? low_best : high_best;
      if (!slot) {
        slot = i;
        continue;
      }
      double q_best = d.grid_point(*slot);
      double r_best = q_best <= p ? table[*slot] : (1.0 - alice.z) * table[*slot];
      if (r > r_best) slot = i;
    }
    candidates.push_back(v_star);
    if (p <= d.support_max()) candidates.push_back(p);
    auto refine = [&](std::size_t i, double lo_clip, double hi_clip) {
      double lo = std::max(d.grid_point(i == 0 ? 0 : i - 1), lo_clip);
      double hi = std::min(d.grid_point(std::min(i + 1, n - 1)), hi_clip);
      candidates.push_back(d.grid_point(i));
      if (hi > lo) candidates.push_back(numeric::golden_section_max(rev, lo, hi).x);
    };
    if (low_best) refine(*low_best, 0.0, p);
    if (high_best) refine(*high_best, std::nextafter(p, kInf), d.support_max());
  }
  // Visiting prices from the top means a tie never displaces a larger price.
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  PostedPrice best{candidates.front(), rev(candidates.front())};
  for (double q : candidates) {
    double r = rev(q);
    if (r > best.revenue + tol) best = {q, r};
  }
  return best;
}

BestResponseReport bob_menu_search(const SingleLottery& alice,
                                   const ValueDistribution& d,
                                   const MenuSearchOptions& opts) {
  BestResponseReport report;
  report.posted = bob_best_posted_price(alice, d);
  const PricingMenu a_menu = alice.menu();
  RevenueOptions ro;
  ro.grid_points = opts.grid_points;
  auto evaluate = [&](const PricingMenu& b) {
    ++report.evaluations;
    return revenues(a_menu, b, d, ro).rev_bob;
  };

  double scale = d.is_continuous()
                     ? std::min(d.support_max(),
                                4.0 * std::max(myerson_price(d), alice.p))
                     : d.support_max();
  if (!(scale > 0.0)) scale = 1.0;

  std::mt19937_64 rng(opts.seed);
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  const std::size_t per_restart = std::max<std::size_t>(1, opts.budget / restarts);
  bool have_best = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    PricingMenu current;
    if (r == 0) {
      current = fixed_price(report.posted.q);
    } else if (r == 1) {
      current = SingleLottery{alice.z, alice.p}.menu();
    } else {
      current = random_menu(rng, opts.max_breakpoints, scale);
    }
    double current_rev = evaluate(current);
    double sigma = 0.1;
    for (std::size_t it = 1; it < per_restart; ++it) {
      PricingMenu next = perturb_menu(current, rng, sigma, scale, opts.max_breakpoints);
      if (next.breakpoints().size() > opts.max_breakpoints) continue;
      double next_rev = evaluate(next);
      if (next_rev > current_rev) {
        current = std::move(next);
        current_rev = next_rev;
        sigma = std::min(0.5, sigma * 1.5);
      } else {
        sigma = std::max(1e-6, sigma * 0.8);
      }
    }
    if (!have_best || current_rev > report.challenger_revenue) {
      report.challenger = current;
      report.challenger_revenue = current_rev;
      have_best = true;
    }
  }
  report.margin = report.posted.revenue - report.challenger_revenue;
  return report;
}

PricingMenu bottom_properize(const PricingMenu& bob, double p_hat) {
  if (!(p_hat >= 0.0) || !std::isfinite(p_hat)) {
    throw DomainError(ErrorCode::invalid_argument, "p_hat must be >= 0");
  }
  auto pts = bob.breakpoints();
  std::vector<Breakpoint> raw;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    raw.push_back({pts[i].x, std::max(pts[i].price, p_hat * pts[i].x)});
    if (i + 1 == pts.size()) break;
    double g0 = pts[i].price - p_hat * pts[i].x;
    double g1 = pts[i + 1].price - p_hat * pts[i + 1].x;
    if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) {
      double x = pts[i].x + g0 * (pts[i + 1].x - pts[i].x) / (g0 - g1);
      raw.push_back({x, p_hat * x});
    }
  }
  return properize(raw);
}

BottomProperReport bottom_proper_check(const SingleLottery& alice,
                                       const PricingMenu& bob,
                                       const ValueDistribution& d,
                                       std::size_t grid_points) {
  BottomProperReport out;
  const PricingMenu a_menu = alice.menu();
  out.s = ab_start(alice, bob, d.support_max());
  double probe = std::isfinite(out.s) ? out.s : d.support_max();
  double x = best_response(a_menu, bob, probe).bob_option();
  out.p_hat = x > 0.0 ? bob.price_or_throw(x) / x : 0.0;
  out.transformed = bottom_properize(bob, out.p_hat);
  RevenueOptions ro;
  ro.grid_points = grid_points;
  out.rev_before = revenues(a_menu, bob, d, ro).rev_bob;
  out.rev_after = revenues(a_menu, out.transformed, d, ro).rev_bob;
  return out;
}

FloorTransformReport monopolist_floor_transform(const PricingMenu& m,
                                                double v_star_ref,
                                                const ValueDistribution& d) {
  double z = demand(m, v_star_ref);
  if (!(z > 0.0)) {
    throw DomainError(ErrorCode::zero_demand, "menu sells nothing at the reference value");
  }
  FloorTransformReport out;
  out.q = m.price_or_throw(z) / z;
  out.transformed = bottom_properize(m, out.q);
  out.rev_before = monopoly_revenue(m, d);
  out.rev_after = monopoly_revenue(out.transformed, d);
  if (d.is_continuous()) {
    const double psi_q = psi(d, out.q);
    out.conditions_hold = true;
    for (std::size_t i = 0; i < d.grid_size() && out.conditions_hold; ++i) {
      double v = d.grid_point(i);
      if (v <= out.q && psi(d, v) > psi_q + 1e-12) out.conditions_hold = false;
      if (v >= out.q && v < v_star_ref && psi_q > psi(d, v) + 1e-12) {
        out.conditions_hold = false;
      }
    }
  }
  return out;
}

PricingMenu alice_one_over_e_menu(const ValueDistribution& d, std::size_t grid) {
  if (grid < 2) throw DomainError(ErrorCode::invalid_argument, "grid must be >= 2");
  const double m = monopoly_revenue(d);
  const double e = std::numbers::e;
  const double x_max = 1.0 - 1.0 / e;
  const double dx = x_max / static_cast<double>(grid - 1);
  std::vector<Breakpoint> raw;
  raw.reserve(grid);
  double price = 0.0;
  for (std::size_t i = 0; i + 1 < grid; ++i) {
    double x = x_max * static_cast<double>(i) / static_cast<double>(grid - 1);
    double target = std::min(m, m / (e * (1.0 - x)));
    price += gamma_inverse(d, target) * dx;
    double x_next = i + 2 == grid ? x_max
                                  : x_max * static_cast<double>(i + 1) /
                                        static_cast<double>(grid - 1);
    raw.push_back({x_next, price});
  }
  return properize(raw);
}

StackelbergOutcome stackelberg_outcome(const ValueDistribution& d,
                                       const Theorem31Options& opts,
                                       const RevenueOptions& revenue_opts) {
  StackelbergOutcome out;
  out.alice_menu = construct_theorem31(d, opts);
  PostedPrice posted = bob_best_posted_price(out.alice_menu, d);
  out.bob_price = posted.q;
  out.bob_menu = fixed_price(posted.q);
  CompetitionOutcome c = revenues(out.alice_menu.menu(), out.bob_menu, d, revenue_opts);
  out.rev_alice = c.rev_alice;
  out.rev_bob = c.rev_bob;
  out.monopoly_benchmark = monopoly_revenue(d);
  out.ratio_alice = out.rev_alice / out.monopoly_benchmark;
  out.ratio_bob = out.rev_bob / out.monopoly_benchmark;
  return out;
}

std::vector<PointMassResponse> bob_point_mass_responses(
    const PricingMenu& alice, double v0, const PointMassResponseOptions& opts) {
  if (!(opts.price_step > 0.0 && opts.price_step <= 1.0)) {
    throw DomainError(ErrorCode::invalid_argument, "price_step must lie in (0,1]");
  }
  std::vector<double> prices;
  const std::size_t k = steps_for(opts.price_step);
  for (std::size_t i = 0; i <= k; ++i) {
    prices.push_back(v0 * static_cast<double>(i) / static_cast<double>(k));
  }
  for (double s : alice.slopes()) {
    if (s <= v0) prices.push_back(s);
  }
  std::sort(prices.begin(), prices.end(), std::greater<>());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());

  struct Candidate {
    bool posted;
    double q, z, p;
    double rev_bob, rev_alice;
  };
  std::vector<Candidate> all;
  double best = -kInf;
  for (double q : prices) {
    BuyerChoice c = best_response(alice, fixed_price(q), v0);
    all.push_back({true, q, 1.0, q, c.pay_bob, c.pay_alice});
    best = std::max(best, c.pay_bob);
  }
  if (opts.lottery_step > 0.0) {
    const std::size_t l = steps_for(opts.lottery_step);
    for (std::size_t i = 1; i <= l; ++i) {
      double z = static_cast<double>(i) / static_cast<double>(l);
      for (std::size_t j = 0; j <= l; ++j) {
        double p = v0 * static_cast<double>(j) / static_cast<double>(l);
        BuyerChoice c = best_response(alice, SingleLottery{z, p}.menu(), v0);
        all.push_back({false, 0.0, z, p, c.pay_bob, c.pay_alice});
        best = std::max(best, c.pay_bob);
      }
    }
  }
  const double tol = opts.tie_tol * std::max(1.0, v0);
  std::vector<PointMassResponse> out;
  for (const Candidate& c : all) {
    if (c.rev_bob < best - tol) continue;
    PointMassResponse r;
    r.posted = c.posted;
    r.q = c.q;
    r.menu = c.posted ? fixed_price(c.q) : SingleLottery{c.z, c.p}.menu();
    r.rev_bob = c.rev_bob;
    r.rev_alice = c.rev_alice;
    out.push_back(std::move(r));
  }
  return out;
}

AliceSearchReport alice_menu_search_point_mass(double v0,
                                               const AliceSearchOptions& opts) {
  AliceSearchReport report;
  auto evaluate = [&](const PricingMenu& a) {
    ++report.evaluations;
    double best = 0.0;
    for (const auto& r : bob_point_mass_responses(a, v0, opts.bob)) {
      best = std::max(best, r.rev_alice);
    }
    return best;
  };
  std::mt19937_64 rng(opts.seed);
  bool have_best = false;
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    PricingMenu current = r == 0 ? SingleLottery{0.5, 0.5 * v0}.menu()
                                 : random_menu(rng, opts.max_breakpoints, v0);
    double current_rev = evaluate(current);
    double sigma = 0.1;
    for (std::size_t it = 0; it < opts.iterations; ++it) {
      PricingMenu next = perturb_menu(current, rng, sigma, v0, opts.max_breakpoints);
      if (next.breakpoints().size() > opts.max_breakpoints) continue;
      double next_rev = evaluate(next);
      if (next_rev > current_rev) {
        current = std::move(next);
        current_rev = next_rev;
        sigma = std::min(0.5, sigma * 1.5);
      } else {
        sigma = std::max(1e-6, sigma * 0.8);
      }
    }
    if (!have_best || current_rev > report.best_rev_alice) {
      report.best_menu = current;
      report.best_rev_alice = current_rev;
      have_best = true;
    }
  }
  return report;
}

NashReport nash_deviation_search(const PricingMenu& alice, const PricingMenu& bob,
                                 const ValueDistribution& d, double step) {
  if (d.kind() != DistributionKind::point_mass) {
    throw DomainError(ErrorCode::unsupported_distribution,
                      "deviation search needs a point-mass buyer");
  }
  if (!(step > 0.0 && step <= 1.0)) {
    throw DomainError(ErrorCode::invalid_argument, "step must lie in (0,1]");
  }
  const double v0 = d.atoms().front().value;
  NashReport out;
  BuyerChoice now = best_response(alice, bob, v0);
  out.rev_alice = now.pay_alice;
  out.rev_bob = now.pay_bob;
  if (out.rev_alice <= kImprovement && out.rev_bob <= kImprovement) {
    out.status = NashStatus::equilibrium_consistent;
    return out;
  }
  const std::size_t n = steps_for(step);
  for (Seller who : {Seller::bob, Seller::alice}) {
    double current = who == Seller::bob ? out.rev_bob : out.rev_alice;
    double best = current + kImprovement;
    std::optional<SingleLottery> found;
    for (std::size_t i = n; i >= 1; --i) {
      double z = static_cast<double>(i) / static_cast<double>(n);
      for (std::size_t j = 0; j <= n; ++j) {
        SingleLottery dev{z, v0 * static_cast<double>(j) / static_cast<double>(n)};
        PricingMenu m = dev.menu();
        double rev = who == Seller::bob ? best_response(alice, m, v0).pay_bob
                                        : best_response(m, bob, v0).pay_alice;
        if (rev > best) {
          best = rev;
          found = dev;
        }
      }
    }
    if (found) {
      out.status = NashStatus::deviation_found;
      out.deviator = who;
      out.deviation = found;
      out.deviation_revenue = best;
      return out;
    }
  }
  out.status = NashStatus::inconclusive_at_resolution;
  return out;
}

SubgradientReport subgradient_bound_check(const PricingMenu& alice,
                                          const ValueDistribution& d,
                                          double q_step) {
  if (d.kind() != DistributionKind::point_mass) {
    throw DomainError(ErrorCode::unsupported_distribution,
                      "subgradient bound needs a point-mass buyer");
  }
  const double v0 = d.atoms().front().value;
  std::vector<double> prices;
  const std::size_t k = steps_for(q_step);
  for (std::size_t i = 0; i <= k; ++i) {
    prices.push_back(v0 * static_cast<double>(i) / static_cast<double>(k));
  }
  // Bob's revenue jumps down at Alice's marginal prices; the supremum sits
  // just below them.
  for (double s : alice.slopes()) {
    if (s <= v0) {
      prices.push_back(s);
      prices.push_back(std::nextafter(s, 0.0));
    }
  }
  std::sort(prices.begin(), prices.end());
  SubgradientReport out;
  auto choice_at = [&](double q) { return best_response(alice, fixed_price(q), v0); };
  // Between plan switches Bob's revenue is q times a fixed allocation, so the
  // supremum is approached just below a switch.
  for (std::size_t i = 0; i < prices.size(); ++i) {
    BuyerChoice here = choice_at(prices[i]);
    out.R = std::max(out.R, here.pay_bob);
    if (i + 1 == prices.size()) break;
    double lo = prices[i];
    const double hi = prices[i + 1];
    for (int guard = 0; guard < 16 && !here.same_plan(choice_at(hi)); ++guard) {
      auto differs = [&](double q) { return !here.same_plan(choice_at(q)); };
      numeric::Bracket b = numeric::bisect(differs, lo, hi, 0.0);
      out.R = std::max(out.R, choice_at(b.lo).pay_bob);
      lo = b.hi;
      here = choice_at(lo);
      out.R = std::max(out.R, here.pay_bob);
    }
  }
  if (v0 <= 0.0) return out;
  const double r = out.R / v0;
  auto pts = alice.breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double z = pts[i].x;
    if (z >= 1.0 - r - 1e-12) continue;
    // Nothing is offered above x_bar, so its subgradients are unbounded.
    double slope = i + 1 < pts.size() ? alice.slope(i) : kInf;
    double bound = out.R / (1.0 - z);
    bool ok = slope <= bound + 1e-9;
    out.checks.push_back({z, slope, bound, ok});
    out.all_ok = out.all_ok && ok;
  }
  return out;
}

}  // namespace duopoly
