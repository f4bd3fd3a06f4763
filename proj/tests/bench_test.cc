#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dforall/bench.h"
#include "dforall/frontend.h"

namespace dforall {
namespace {

TEST(RegistryTest, RequiredEntries) {
  std::set<std::string> names;
  for (const BenchmarkEntry& e : Registry()) names.insert(e.name);
  for (const char* n :
       {"ackley2d", "booth", "bohachevsky1", "brent", "easom", "levi13", "schaffer_f6",
        "eggholder", "rosenbrock_cubic", "rosenbrock_disk", "ripple1", "lyapunov_pendulum_verify",
        "lyapunov_mathieu_verify", "lyapunov_pendulum_synth", "lyapunov_mathieu_synth"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
  EXPECT_EQ(FindBenchmark("no_such_entry"), nullptr);
}

TEST(RegistryTest, EveryEntryParsesAndNormalizes) {
  for (const BenchmarkEntry& e : Registry()) {
    SCOPED_TRACE(e.name);
    const Problem p = Parse(e.text);
    const CnfForallFormula f = Normalize(p);
    EXPECT_FALSE(f.clauses.empty());
    EXPECT_FALSE(p.InitialBox().is_empty());
    if (!e.objective.empty()) {
      EXPECT_NO_THROW(ParseObjective(p, e.objective));
      EXPECT_TRUE(e.known_global.has_value());
      EXPECT_FALSE(f.is_ground());
    }
  }
}

TEST(RegistryTest, Metadata) {
  EXPECT_EQ(FindBenchmark("lyapunov_mathieu_verify")->expected, Verdict::kUnsat);
  EXPECT_EQ(FindBenchmark("eggholder")->expected, Verdict::kDeltaSat);
  EXPECT_EQ(*FindBenchmark("eggholder")->known_global, ParseRational("-959.6407"));
  EXPECT_TRUE(FindBenchmark("ripple1")->extended);
  EXPECT_TRUE(FindBenchmark("lyapunov_pendulum_synth")->extended);
  EXPECT_FALSE(FindBenchmark("booth")->extended);
}

TEST(ParseBenchmarkTest, HeaderTags) {
  const BenchmarkEntry e = ParseBenchmark("t",
                                          ";; @objective (^ x 2)\n"
                                          ";; @global 1/3\n"
                                          ";; @expect unsat\n"
                                          ";; @extended\n"
                                          "(declare-const x Real [0, 1])\n"
                                          "(assert (>= x 2))\n");
  EXPECT_EQ(e.objective, "(^ x 2)");
  EXPECT_EQ(*e.known_global, Rational(1, 3));
  EXPECT_EQ(e.expected, Verdict::kUnsat);
  EXPECT_TRUE(e.extended);
}

RunReport SmallRun() {
  SolverConfig config(Rational(1, 1000));
  return RunDocument("square",
                     "(declare-const x Real [-1, 1])\n"
                     "(assert (forall ((y Real [-1, 1])) (<= (^ x 2) (^ y 2))))",
                     config, "(^ x 2)", Rational(0));
}

TEST(ReportTest, TextOutput) {
  const RunReport r = SmallRun();
  ASSERT_EQ(r.verdict, Verdict::kDeltaSat);
  std::ostringstream os;
  WriteText(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "delta-sat with delta = 0.001");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("x : [", 0), 0u) << line;
  EXPECT_EQ(line.back(), ']');
  EXPECT_LE(*r.objective, 0.001);
  EXPECT_EQ(r.stats.checked_counterexamples, r.stats.counterexamples);
}

TEST(ReportTest, CsvColumns) {
  const std::vector<std::string> expected = {"name",     "verdict",       "objective",
                                             "known_global", "abs_error", "branchings",
                                             "ce_rounds", "localopt_calls", "seconds"};
  EXPECT_EQ(CsvColumns(), expected);
  std::ostringstream os;
  WriteCsvHeader(os);
  WriteCsvRow(os, SmallRun());
  std::istringstream in(os.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "name,verdict,objective,known_global,abs_error,branchings,ce_rounds,"
                    "localopt_calls,seconds");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(row.rfind("square,delta-sat,", 0), 0u) << row;
}

TEST(ReportTest, JsonRoundTripsRationals) {
  SolverConfig config = SolverConfig::FromValues(Rational(1, 3), Rational(1, 7), Rational(1, 11));
  const RunReport r = RunDocument("third", "(declare-const x Real [-1, 1]) (assert (= x 0.5))",
                                  config);
  const nlohmann::json j = nlohmann::json::parse(ToJson(r));
  EXPECT_EQ(j["name"], "third");
  EXPECT_EQ(j["verdict"], "delta-sat");
  EXPECT_EQ(ParseRational(j["config"]["delta"].get<std::string>()), Rational(1, 3));
  EXPECT_EQ(ParseRational(j["config"]["epsilon"].get<std::string>()), Rational(1, 7));
  EXPECT_EQ(ParseRational(j["config"]["delta_prime"].get<std::string>()), Rational(1, 11));
  ASSERT_EQ(j["box"].size(), 1u);
  EXPECT_EQ(j["box"][0]["name"], "x");
  EXPECT_LE(j["box"][0]["lo"].get<double>(), j["box"][0]["hi"].get<double>());
  const nlohmann::json list = nlohmann::json::parse(ToJson(std::vector<RunReport>{r, r}));
  EXPECT_EQ(list.size(), 2u);
}

TEST(BenchmarkRunTest, PendulumVerification) {
  SolverConfig config(Rational(1, 20));
  config.time_budget = 180;
  const RunReport r = RunBenchmark(*FindBenchmark("lyapunov_pendulum_verify"), config);
  EXPECT_EQ(r.verdict, Verdict::kUnsat) << r.note;
}

TEST(BenchmarkRunTest, CompareLocalOptIsReproducible) {
  SolverConfig config(Rational(1, 10000));
  config.time_budget = 60;
  const RunReport a = RunBenchmark(*FindBenchmark("booth"), config);
  const RunReport b = RunBenchmark(*FindBenchmark("booth"), config);
  EXPECT_EQ(a.stats.counterexamples, b.stats.counterexamples);
  EXPECT_EQ(a.lo, b.lo);
  EXPECT_EQ(a.hi, b.hi);
}

}  // namespace
}  // namespace dforall
