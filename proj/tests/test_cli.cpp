#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "duopoly/cli.hpp"
#include "duopoly/error.hpp"
#include "duopoly/io.hpp"
#include "duopoly/verify.hpp"

using namespace duopoly;
using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(ParseDistribution, Shorthands) {
  EXPECT_EQ(io::parse_distribution("uniform01", 101).name(), "uniform[0,1]");
  EXPECT_EQ(io::parse_distribution("pointmass1").kind(), DistributionKind::point_mass);
  EXPECT_EQ(io::parse_distribution("exp1", 101).family(), Family::exponential);
}

TEST(ParseDistribution, JsonFamilies) {
  auto u = io::parse_distribution(R"({"family":"uniform","params":[0,2]})", 101);
  EXPECT_EQ(u.support_max(), 2.0);
  auto d = io::parse_distribution(R"({"family":"discrete","atoms":[[1,0.5],[2,0.5]]})");
  EXPECT_EQ(d.kind(), DistributionKind::finite_discrete);
  auto g = io::parse_distribution(R"({"family":"exp","params":[1],"grid":11})");
  EXPECT_EQ(g.grid_size(), 11u);
}

TEST(ParseDistribution, Errors) {
  EXPECT_THROW(io::parse_distribution("nope"), io::ParseError);
  EXPECT_THROW(io::parse_distribution(R"({"family":"uniform","params":[0]})"), io::ParseError);
  EXPECT_THROW(io::parse_distribution(R"({"family":"uniform","params":[1,0]})"), io::ParseError);
  EXPECT_THROW(io::parse_distribution("{not json"), io::ParseError);
}

TEST(ParseMenu, Forms) {
  EXPECT_EQ(io::parse_menu(R"({"fixed_price":0.8})"), fixed_price(0.8));
  EXPECT_EQ(io::parse_menu(R"({"lottery":{"z":0.5,"p":0.5}})"), (SingleLottery{0.5, 0.5}.menu()));
  EXPECT_EQ(io::parse_menu(R"({"breakpoints":[[0.5,0.2],[1,0.3]]})"),
            properize({{1.0, 0.3}}));
  EXPECT_THROW(io::parse_menu(R"({"price":1})"), io::ParseError);
}

TEST(ParseLottery, Pair) {
  SingleLottery l = io::parse_lottery_pair("0.25,0.8");
  EXPECT_EQ(l.z, 0.25);
  EXPECT_EQ(l.p, 0.8);
  EXPECT_THROW(io::parse_lottery_pair("0.25"), io::ParseError);
}

TEST(Dump, RoundsToTwelveDigitsAndSpellsInfinity) {
  json j = {{"x", 0.1 + 0.2}, {"inf", std::numeric_limits<double>::infinity()}, {"n", 3}};
  std::string s = io::dump(j);
  EXPECT_NE(s.find("\"x\": 0.3"), std::string::npos) << s;
  EXPECT_EQ(s.find("0.30000000000000004"), std::string::npos) << s;
  EXPECT_NE(s.find("\"inf\": \"inf\""), std::string::npos) << s;
  EXPECT_EQ(io::format_number(1.0 / 3), "0.333333333333");
}

TEST(Cli, BuyerExample) {
  Invocation r = run({"buyer", "--alice", R"({"lottery":{"z":0.5,"p":0.5}})", "--bob",
                      R"({"fixed_price":0.8})", "--v", "1.0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["order"], "alice-first");
  EXPECT_DOUBLE_EQ(j["pay_alice"].get<double>(), 0.25);
  EXPECT_EQ(j["consistent"], true);
}

TEST(Cli, SweepCsvRows) {
  Invocation r = run({"sweep", "posted-price", "--alice", R"({"lottery":{"z":0.5,"p":0.5}})",
                      "--dist", "uniform01", "--csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("q,rev_bob\n", 0), 0u);
  EXPECT_NE(r.out.find("\n0.3,0.21\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n0.7,0.105\n"), std::string::npos);
}

TEST(Cli, StackelbergPointMass) {
  Invocation r = run({"stackelberg", "--dist", "pointmass1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["rev_alice"].get<double>(), 0.25);
  EXPECT_EQ(j["rev_bob"].get<double>(), 0.5);
}

TEST(Cli, VerifyStackelbergSuiteOnUniform) {
  Invocation r = run({"verify", "thm-3.1", "--dist", R"({"family":"uniform","params":[0,1]})"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["suite_id"], "thm-3.1");
  EXPECT_EQ(j["cases_run"], j["cases_passed"]);
}

TEST(Cli, AuxSweepHeader) {
  Invocation r = run({"aux-dist", "--dist", "uniform01", "--lottery", "0.5,0.5", "--s", "0.8",
                      "--sweep", "--points", "11"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("v,f_s,F_s,Gamma_s\n", 0), 0u);
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run({"buyer", "--alice", "{}", "--bob", R"({"fixed_price":1})", "--v", "1"}).code,
            cli::kExitParse);
  EXPECT_EQ(run({"stackelberg"}).code, cli::kExitParse);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitParse);
  EXPECT_EQ(run({"verify", "no-such-suite"}).code, cli::kExitParse);
  EXPECT_EQ(run({"dist", "--dist", "uniform7"}).code, cli::kExitParse);
}

TEST(Cli, DomainErrorsExitThree) {
  Invocation r =
      run({"stackelberg", "--dist", R"({"family":"mixture","params":[0,1,10,11,0.5]})"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("error: "), std::string::npos);
  EXPECT_EQ(run({"nash-check", "--alice", R"({"fixed_price":1})", "--bob",
                 R"({"fixed_price":1})", "--dist", "uniform01"})
                .code,
            cli::kExitDomain);
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, DeterministicOutput) {
  std::vector<std::string> args = {"best-response", "--alice", R"({"lottery":{"z":0.5,"p":0.3}})",
                                   "--dist", R"({"family":"exp","params":[1],"grid":2001})",
                                   "--search-budget", "60", "--seed", "4"};
  Invocation a = run(args), b = run(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyListNamesEverySuite) {
  Invocation r = run({"verify", "--list"});
  ASSERT_EQ(r.code, cli::kExitOk);
  json j = json::parse(r.out);
  EXPECT_EQ(j.size(), verify::suites().size());
  for (const char* id : {"lemma-3.2", "lemma-3.6", "lemma-B.14", "thm-3.9", "thm-4.1"}) {
    EXPECT_TRUE(verify::has_suite(id)) << id;
  }
}

TEST(Verify, UnknownSuiteThrows) {
  EXPECT_THROW(verify::run_suite("lemma-9.9", {}), std::invalid_argument);
}

TEST(Verify, SuiteReportIsDeterministic) {
  verify::SuiteOptions o;
  o.cases = 200;
  o.seed = 3;
  verify::SuiteResult a = verify::run_suite("lemma-B.4", o), b = verify::run_suite("lemma-B.4", o);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.cases_run, 200u);
  EXPECT_EQ(io::dump(verify::to_json(a)), io::dump(verify::to_json(b)));
}

TEST(Verify, FailingCountsAreReported) {
  verify::SuiteResult r;
  r.cases_run = 3;
  r.cases_passed = 2;
  EXPECT_FALSE(r.passed());
  verify::SuiteResult empty;
  EXPECT_FALSE(empty.passed());
}
