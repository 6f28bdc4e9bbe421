// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "duopoly/competition.hpp"
#include "duopoly/distributions.hpp"
#include "duopoly/io.hpp"
#include "duopoly/solvers.hpp"
#include "duopoly/verify.hpp"

using namespace duopoly;

namespace {

const double kE = std::numbers::e;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [failed]");
  }
};

std::string num(double x) { return io::format_number(x); }

void suite(Outcome& out, const char* id) {
  verify::SuiteResult r = verify::run_suite(id, {});
  out.require(r.passed(), std::string(id) + " " + std::to_string(r.cases_passed) + "/" +
                              std::to_string(r.cases_run) + " worst " + num(r.worst_violation));
}

// Plateau revenue for Bob and Alice's revenue at the monopoly price, against
// the 1/e menu.
void one_over_e_literals(Outcome& out, const ValueDistribution& d, double target) {
  const double m = monopoly_revenue(d);
  const double vs = gamma_inverse(d, m);
  const double lo = gamma_inverse(d, m / kE);
  PricingMenu a = alice_one_over_e_menu(d);
  const RevenueOptions grid{2049, false};
  out.require(std::fabs(m / kE - target) <= 2e-3, d.name() + " M/e " + num(m / kE));
  for (double t : {0.25, 0.5, 0.75}) {
    double q = lo + t * (vs - lo);
    double rb = revenues(a, fixed_price(q), d, grid).rev_bob;
    out.require(std::fabs(rb - target) <= 2e-3, "plateau rev_bob(" + num(q) + ") " + num(rb));
  }
  double ra = revenues(a, fixed_price(vs), d, grid).rev_alice;
  out.require(std::fabs(ra - target) <= 2e-3, "rev_alice at q=" + num(vs) + " " + num(ra));
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 means none
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Stackelberg pipeline on Uniform[0,1] gives 1/16 and 1/8", 5.0,
       [](Outcome& out) {
         StackelbergOutcome s = stackelberg_outcome(ValueDistribution::uniform(0, 1, 200'001));
         out.require(std::fabs(s.rev_alice - 1.0 / 16) <= 1e-5, "rev_alice " + num(s.rev_alice));
         out.require(std::fabs(s.rev_bob - 1.0 / 8) <= 1e-5, "rev_bob " + num(s.rev_bob));
       }},
      {2, "point mass: 1/4 and 1/2 exactly, no lottery earns Alice more than 1/4", 30.0,
       [](Outcome& out) {
         StackelbergOutcome s = stackelberg_outcome(ValueDistribution::point_mass(1.0));
         out.require(s.rev_alice == 0.25, "rev_alice " + num(s.rev_alice));
         out.require(s.rev_bob == 0.5, "rev_bob " + num(s.rev_bob));
         suite(out, "thm-3.3");
       }},
      {3, "menu search never beats the best posted price", 300.0,
       [](Outcome& out) { suite(out, "lemma-3.2"); }},
      {4, "auxiliary-prior reduction for Bob's revenue and allocations", 120.0,
       [](Outcome& out) { suite(out, "lemma-3.6"); }},
      {5, "closed-form posted-price revenue matches integration", 0.0,
       [](Outcome& out) { suite(out, "lemma-B.14"); }},
      {6, "1/e menu: three-piece Bob curve and Alice earns M/e", 0.0,
       [](Outcome& out) {
         suite(out, "lemma-B.18");
         suite(out, "lemma-B.19");
         one_over_e_literals(out, ValueDistribution::uniform(0, 1), 0.091970);
         one_over_e_literals(out, ValueDistribution::exponential(1.0), 0.135335);
       }},
      {7, "menu search at a point mass stays below 1/e, the 1/e menu reaches it", 600.0,
       [](Outcome& out) { suite(out, "thm-3.9"); }},
      {8, "every revenue-positive pair at a point mass has a profitable deviation", 0.0,
       [](Outcome& out) { suite(out, "thm-4.1"); }},
      {9, "buyer structure over 10000 sampled tuples per property", 0.0,
       [](Outcome& out) {
         for (const char* id :
              {"lemma-3.4", "lemma-B.2", "lemma-B.3", "lemma-B.4", "lemma-B.5", "lemma-B.6"}) {
           suite(out, id);
         }
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0) {
      out.require(secs < c.time_limit, "runtime " + num(std::round(secs * 10) / 10) + "s < " +
                                           num(c.time_limit) + "s");
    }
    if (!out.ok) ++failed;
    std::printf("%s criterion %d: %s (%s)\n", out.ok ? "PASS" : "FAIL", c.id, c.title,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
