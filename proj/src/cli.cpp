#include "duopoly/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "duopoly/buyer.hpp"
#include "duopoly/competition.hpp"
#include "duopoly/distributions.hpp"
#include "duopoly/error.hpp"
#include "duopoly/io.hpp"
#include "duopoly/menus.hpp"
#include "duopoly/solvers.hpp"
#include "duopoly/verify.hpp"

namespace duopoly::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_value(const std::string& text, const char* what) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw io::ParseError(std::string("bad ") + what + " '" + text + "'");
}

SingleLottery require_lottery(const PricingMenu& m, const char* who) {
  auto l = as_single_lottery(m);
  if (!l) {
    throw DomainError(ErrorCode::unsupported,
                      std::string(who) + " must offer a single lottery here");
  }
  return *l;
}

json distribution_json(const ValueDistribution& d) {
  json j = {{"name", d.name()},
            {"support_max", d.support_max()},
            {"myerson_price", myerson_price(d)},
            {"monopoly_revenue", monopoly_revenue(d)}};
  if (d.is_continuous()) {
    j["grid_size"] = d.grid_size();
    j["regularity"] = std::string(to_string(classify_regularity(d).label));
  } else {
    json atoms = json::array();
    for (const Atom& a : d.atoms()) atoms.push_back({a.value, a.mass});
    j["atoms"] = atoms;
  }
  return j;
}

struct Args {
  std::string dist;
  std::string alice;
  std::string bob;
  std::string lottery;
  std::string s = "inf";
  std::string suite;
  std::string out_dir;
  std::vector<double> qs;
  std::vector<double> ys;
  std::optional<double> nudge;
  double v = 0.0;
  double step = 1e-3;
  double sweep_step = 0.0;
  std::size_t budget = 2000;
  std::size_t cases = 0;
  std::size_t points = 201;
  std::size_t revenue_grid = 2049;
  std::size_t menu_grid = 4096;
  std::uint64_t seed = 1;
  bool csv = false;
  bool sweep = false;
  bool full_menu = false;
  bool list = false;
};

int cmd_dist(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  json j = distribution_json(d);
  for (double q : a.qs) j["gamma"].push_back({{"q", q}, {"value", gamma(d, q)}});
  for (double y : a.ys) j["gamma_inverse"].push_back({{"y", y}, {"value", gamma_inverse(d, y)}});
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_buyer(const Args& a, std::ostream& out) {
  PricingMenu alice = io::parse_menu(a.alice), bob = io::parse_menu(a.bob);
  json j = io::to_json(best_response(alice, bob, a.v));
  if (auto l = as_single_lottery(alice)) {
    j["consistent"] = classify(*l, bob, a.v).consistent;
  }
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_stackelberg(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  Theorem31Options opts;
  opts.nudge = a.nudge;
  StackelbergOutcome s = stackelberg_outcome(d, opts);
  json j = {{"distribution", d.name()},
            {"alice_menu", io::to_json(s.alice_menu)},
            {"bob_menu", io::to_json(s.bob_menu)},
            {"bob_price", s.bob_price},
            {"rev_alice", s.rev_alice},
            {"rev_bob", s.rev_bob},
            {"monopoly_benchmark", s.monopoly_benchmark},
            {"ratio_alice", s.ratio_alice},
            {"ratio_bob", s.ratio_bob}};
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_best_response(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  SingleLottery alice = require_lottery(io::parse_menu(a.alice), "Alice's menu");
  MenuSearchOptions opts;
  opts.budget = a.budget;
  opts.seed = a.seed;
  BestResponseReport r = bob_menu_search(alice, d, opts);
  json j = {{"distribution", d.name()},
            {"alice", io::to_json(alice)},
            {"best_posted_price", r.posted.q},
            {"posted_revenue", r.posted.revenue},
            {"challenger", io::to_json(r.challenger)},
            {"challenger_revenue", r.challenger_revenue},
            {"margin", r.margin},
            {"evaluations", r.evaluations},
            {"seed", a.seed}};
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_one_over_e(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  const double m = monopoly_revenue(d);
  PricingMenu menu = alice_one_over_e_menu(d, a.menu_grid);
  const double q = gamma_inverse(d, m);
  CompetitionOutcome c = revenues(menu, fixed_price(q), d, {a.revenue_grid, false});
  json j = {{"distribution", d.name()},
            {"monopoly_revenue", m},
            {"target", m / std::numbers::e},
            {"plateau_start", gamma_inverse(d, m / std::numbers::e)},
            {"x_bar", menu.x_bar()},
            {"breakpoint_count", menu.breakpoints().size()},
            {"bob_price", q},
            {"rev_alice", c.rev_alice},
            {"rev_bob", c.rev_bob}};
  if (a.full_menu) j["menu"] = io::to_json(menu);
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_aux_dist(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  SingleLottery l = io::parse_lottery_pair(a.lottery);
  AuxiliaryDistribution ax = aux_distribution(d, l, parse_value(a.s, "threshold"));
  if (!a.sweep) {
    json j = {{"distribution", d.name()},
              {"lottery", io::to_json(l)},
              {"s", ax.s()},
              {"infinite_threshold", ax.infinite_threshold()},
              {"squeeze_end", ax.squeeze_end()},
              {"atom_at_zero", ax.atom_at_zero()}};
    out << io::dump(j) << '\n';
    return kExitOk;
  }
  const double top = std::max(d.support_max(), ax.s());
  const std::size_t n = std::max<std::size_t>(a.points, 2);
  out << "v,f_s,F_s,Gamma_s\n";
  for (std::size_t i = 0; i < n; ++i) {
    double v = top * static_cast<double>(i) / static_cast<double>(n - 1);
    double f = d.is_continuous() ? ax.pdf(v) : std::numeric_limits<double>::quiet_NaN();
    out << io::format_number(v) << ',' << (std::isnan(f) ? "" : io::format_number(f)) << ','
        << io::format_number(ax.cdf(v)) << ',' << io::format_number(ax.gamma(v)) << '\n';
  }
  return kExitOk;
}

int cmd_nash_check(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist.empty() ? "pointmass1" : a.dist);
  PricingMenu alice = io::parse_menu(a.alice), bob = io::parse_menu(a.bob);
  NashReport r = nash_deviation_search(alice, bob, d, a.step);
  json j = {{"status", std::string(to_string(r.status))},
            {"rev_alice", r.rev_alice},
            {"rev_bob", r.rev_bob},
            {"step", a.step}};
  if (r.deviator) j["deviator"] = std::string(to_string(*r.deviator));
  if (r.deviation) {
    j["deviation"] = io::to_json(*r.deviation);
    j["deviation_revenue"] = r.deviation_revenue;
  }
  out << io::dump(j) << '\n';
  return kExitOk;
}

int cmd_sweep_posted_price(const Args& a, std::ostream& out) {
  ValueDistribution d = io::parse_distribution(a.dist);
  PricingMenu alice = io::parse_menu(a.alice);
  const double top = d.support_max();
  const double step = a.sweep_step > 0.0 ? a.sweep_step : 0.01 * top;
  const auto n = static_cast<std::size_t>(std::llround(top / step));
  json rows = json::array();
  if (a.csv) out << "q,rev_bob\n";
  for (std::size_t k = 0; k <= n; ++k) {
    double q = std::min(top, step * static_cast<double>(k));
    double rev = revenues(alice, fixed_price(q), d, {a.revenue_grid, false}).rev_bob;
    if (a.csv) {
      out << io::format_number(q) << ',' << io::format_number(rev) << '\n';
    } else {
      rows.push_back({{"q", q}, {"rev_bob", rev}});
    }
  }
  if (!a.csv) out << io::dump(json{{"distribution", d.name()}, {"rows", rows}}) << '\n';
  return kExitOk;
}

int cmd_verify(const Args& a, std::ostream& out, std::ostream& err) {
  if (a.list) {
    json j = json::array();
    for (const auto& s : verify::suites()) {
      j.push_back({{"suite_id", std::string(s.id)}, {"checks", std::string(s.checks)}});
    }
    out << io::dump(j) << '\n';
    return kExitOk;
  }
  if (a.suite.empty()) throw io::ParseError("verify needs a suite id or 'all'");
  verify::SuiteOptions opts;
  if (!a.dist.empty()) opts.dist = io::parse_distribution(a.dist);
  opts.seed = a.seed;
  opts.cases = a.cases;
  opts.artifact_dir = a.out_dir;
  std::vector<std::string> ids;
  if (a.suite == "all") {
    for (const auto& s : verify::suites()) ids.emplace_back(s.id);
  } else if (verify::has_suite(a.suite)) {
    ids.push_back(a.suite);
  } else {
    throw io::ParseError("unknown suite '" + a.suite + "'");
  }
  json results = json::array();
  bool ok = true;
  for (const std::string& id : ids) {
    verify::SuiteResult r = verify::run_suite(id, opts);
    ok = ok && r.passed();
    if (!r.passed()) err << "suite " << id << " failed\n";
    results.push_back(verify::to_json(r));
  }
  out << io::dump(ids.size() == 1 ? results.front() : results) << '\n';
  return ok ? kExitOk : kExitSuiteFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duopoly lottery-mechanism toolkit", "duopoly"};
  app.require_subcommand(1);
  Args a;

  auto* dist = app.add_subcommand("dist", "Summarize a value distribution");
  dist->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  dist->add_option("--q", a.qs, "prices at which to evaluate the revenue curve");
  dist->add_option("--y", a.ys, "revenues to invert on the lower branch");

  auto* buyer = app.add_subcommand("buyer", "Buyer best response to two menus");
  buyer->add_option("--alice", a.alice, "Alice's menu JSON")->required();
  buyer->add_option("--bob", a.bob, "Bob's menu JSON")->required();
  buyer->add_option("--v", a.v, "buyer value")->required();

  auto* stack = app.add_subcommand("stackelberg", "Half-probability lottery against Bob's best price");
  stack->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  stack->add_option("--nudge", a.nudge, "amount subtracted from Alice's price");

  auto* best = app.add_subcommand("best-response", "Search Bob menus against a lottery");
  best->add_option("--alice", a.alice, "Alice's single-lottery menu JSON")->required();
  best->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  best->add_option("--search-budget", a.budget, "menu evaluations");
  best->add_option("--seed", a.seed, "search seed");

  auto* ooe = app.add_subcommand("one-over-e", "Alice's 1/e menu and its revenue");
  ooe->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  ooe->add_option("--grid", a.menu_grid, "menu discretization points");
  ooe->add_flag("--menu", a.full_menu, "include every breakpoint");

  auto* aux = app.add_subcommand("aux-dist", "Auxiliary prior Bob faces");
  aux->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  aux->add_option("--lottery", a.lottery, "Alice's lottery as z,p")->required();
  aux->add_option("--s", a.s, "threshold type (number or inf)");
  aux->add_flag("--sweep", a.sweep, "emit CSV v,f_s,F_s,Gamma_s");
  aux->add_option("--points", a.points, "rows in the sweep");

  auto* nash = app.add_subcommand("nash-check", "Look for a profitable single-lottery deviation");
  nash->add_option("--alice", a.alice, "Alice's menu JSON")->required();
  nash->add_option("--bob", a.bob, "Bob's menu JSON")->required();
  nash->add_option("--dist", a.dist, "point-mass distribution (default pointmass1)");
  nash->add_option("--step", a.step, "deviation grid step");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->require_subcommand(1);
  auto* posted = sweep->add_subcommand("posted-price", "Bob's revenue per posted price");
  posted->add_option("--alice", a.alice, "Alice's menu JSON")->required();
  posted->add_option("--dist", a.dist, "distribution JSON or shorthand")->required();
  posted->add_option("--step", a.sweep_step, "price step (default 1% of the support)");
  posted->add_option("--grid", a.revenue_grid, "probe points per revenue evaluation");
  posted->add_flag("--csv", a.csv, "emit CSV q,rev_bob");

  auto* ver = app.add_subcommand("verify", "Run an invariant suite by id, or all of them");
  ver->add_option("suite", a.suite, "suite id or 'all'");
  ver->add_option("--dist", a.dist, "replace the suite's built-in priors");
  ver->add_option("--seed", a.seed, "sampling seed");
  ver->add_option("--cases", a.cases, "override the number of sampled cases");
  ver->add_option("--out", a.out_dir, "directory for CSV artifacts");
  ver->add_flag("--list", a.list, "list suite ids");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitParse;
  }

  try {
    if (dist->parsed()) return cmd_dist(a, out);
    if (buyer->parsed()) return cmd_buyer(a, out);
    if (stack->parsed()) return cmd_stackelberg(a, out);
    if (best->parsed()) return cmd_best_response(a, out);
    if (ooe->parsed()) return cmd_one_over_e(a, out);
    if (aux->parsed()) return cmd_aux_dist(a, out);
    if (nash->parsed()) return cmd_nash_check(a, out);
    if (posted->parsed()) return cmd_sweep_posted_price(a, out);
    if (ver->parsed()) return cmd_verify(a, out, err);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitParse;
}

}  // namespace duopoly::cli
