// Prints one PASS or FAIL line per acceptance criterion.

#include <chrono>
#include <cmath>
#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dforall/bench.h"
#include "dforall/frontend.h"
#include "dforall/solver.h"
#include "support/oracle.h"
#include "support/properties.h"
#include "support/suite.h"

namespace dforall {
namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome TableOneQuality() {
  struct Row {
    const char* name;
    double tolerance;
  };
  const Row rows[] = {{"ackley2d", 1e-3},      {"booth", 1e-3},  {"bohachevsky1", 1e-3},
                      {"brent", 1e-3},         {"easom", 1e-3},  {"levi13", 1e-3},
                      {"schaffer_f6", 1e-3},   {"rosenbrock_disk", 1e-3},
                      {"eggholder", 1e-2}};
  SolverConfig config(Rational(1, 10000));
  config.time_budget = 120;
  Outcome out{true, ""};
  std::ostringstream os;
  for (const Row& row : rows) {
    const RunReport r = RunBenchmark(*FindBenchmark(row.name), config);
    const bool ok = r.verdict == Verdict::kDeltaSat && r.abs_error && *r.abs_error <= row.tolerance &&
                    r.stats.seconds <= 120;
    out.pass = out.pass && ok;
    os << " " << row.name << "=" << (r.abs_error ? *r.abs_error : -1) << (ok ? "" : "!");
    std::fprintf(stderr, "  %-16s %-9s abs_error %.3g  %.2fs\n", row.name,
                 ToString(r.verdict), r.abs_error.value_or(NAN), r.stats.seconds);
  }
  out.detail = "abs errors:" + os.str();
  return out;
}

Outcome LyapunovVerification() {
  SolverConfig config(Rational(1, 20));
  config.time_budget = 180;
  Outcome out{true, ""};
  for (const char* name : {"lyapunov_pendulum_verify", "lyapunov_mathieu_verify"}) {
    const RunReport r = RunBenchmark(*FindBenchmark(name), config);
    const bool ok = r.verdict == Verdict::kUnsat && r.stats.seconds <= 180;
    out.pass = out.pass && ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s%s %s in %.2fs", out.detail.empty() ? "" : ", ", name,
                  ToString(r.verdict), r.stats.seconds);
    out.detail += buf;
  }
  return out;
}

Outcome ErrorControlRegression() {
  const Rational delta(1, 1000);
  const Problem p = Parse(
      "(declare-const x Real [-1, 1])\n"
      "(assert (forall ((y Real [-1, 1])) (<= (^ x 2) (^ y 2))))");
  const CnfForallFormula f = Normalize(p);
  const SolverConfig config(delta);
  const SolveResult r = Solve(f, p.InitialBox(), config);
  if (r.verdict != Verdict::kDeltaSat) return {false, std::string("verdict ") + ToString(r.verdict)};
  const double x = r.box.Midpoint()[0];
  const testing::GridOracle oracle(Weaken(f, delta), p.VarNames(), 100001);
  const bool objective_ok = x * x <= ToDouble(delta);
  const bool oracle_ok = oracle.Holds({x});
  const bool checked = r.stats.checked_counterexamples == r.stats.counterexamples;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "objective %.3g <= delta, oracle %s, %lld of %lld counterexamples checked", x * x,
                oracle_ok ? "agrees" : "disagrees",
                static_cast<long long>(r.stats.checked_counterexamples),
                static_cast<long long>(r.stats.counterexamples));
  return {objective_ok && oracle_ok && checked, buf};
}

Outcome ParameterOrderGuard() {
  const Rational v[3] = {Rational(1, 1000), Rational(2, 1000), Rational(3, 1000)};
  int perm[3] = {0, 1, 2};
  int rejected = 0;
  int accepted_valid = 0;
  int wrong = 0;
  do {
    const Rational& dp = v[perm[0]];
    const Rational& eps = v[perm[1]];
    const Rational& d = v[perm[2]];
    const bool valid = dp < eps && eps < d;
    bool threw = false;
    try {
      SolverConfig::FromValues(d, eps, dp);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    if (threw) ++rejected;
    if (!threw && valid) ++accepted_valid;
    if (threw == valid) ++wrong;
  } while (std::next_permutation(perm, perm + 3));
  return {wrong == 0 && accepted_valid == 1 && rejected == 5,
          std::to_string(rejected) + " of 5 invalid orderings rejected, valid ordering " +
              (accepted_valid ? "accepted" : "rejected")};
}

Outcome OracleEquivalence() {
  testing::SuiteOptions options;
  options.seed = 2024;
  options.problems = 60;
  options.witness_grid = 500;
  options.unsat_grid = 500;
  const testing::SuiteOutcome s = testing::RunOracleSuite(options);
  for (const std::string& f : s.failures) std::fprintf(stderr, "%s\n", f.c_str());
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d problems: %d delta-sat, %d unsat, %d unknown; %d bad witnesses, %d bad unsat",
                s.problems, s.delta_sat, s.unsat, s.unknown, s.bad_witnesses, s.bad_unsat);
  return {s.problems >= 50 && s.bad_witnesses == 0 && s.bad_unsat == 0, buf};
}

Outcome PropertySuites() {
  const testing::PropertyCount containment = testing::CheckContainment(11, 10000);
  const testing::PropertyCount reductivity = testing::CheckReductivity(12, 10000);
  const testing::PropertyCount soundness = testing::CheckSoundness(13, 1000, 1000);
  const testing::PropertyCount fixedpoint = testing::CheckFixedpoint(14, 1000, 1000);
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "containment %lld/%lld, reductivity %lld/%lld, soundness %lld/%lld, "
                "fixedpoint %lld/%lld (violations/checks)",
                static_cast<long long>(containment.violations),
                static_cast<long long>(containment.checks),
                static_cast<long long>(reductivity.violations),
                static_cast<long long>(reductivity.checks),
                static_cast<long long>(soundness.violations),
                static_cast<long long>(soundness.checks),
                static_cast<long long>(fixedpoint.violations),
                static_cast<long long>(fixedpoint.cases));
  const bool pass = containment.cases >= 10000 && reductivity.cases >= 10000 &&
                    soundness.cases >= 1000 && containment.violations == 0 &&
                    reductivity.violations == 0 && soundness.violations == 0 &&
                    fixedpoint.violations == 0;
  return {pass, buf};
}

Outcome LocalOptEffect() {
  int fewer_or_equal = 0;
  std::ostringstream os;
  for (const char* name : {"ackley2d", "levi13", "schaffer_f6", "eggholder", "booth"}) {
    SolverConfig with(Rational(1, 10000));
    with.time_budget = 120;
    SolverConfig without = with;
    without.local_opt = false;
    const RunReport a = RunBenchmark(*FindBenchmark(name), with);
    const RunReport b = RunBenchmark(*FindBenchmark(name), without);
    const bool ok = a.stats.counterexamples <= b.stats.counterexamples;
    if (ok) ++fewer_or_equal;
    os << " " << name << " " << a.stats.counterexamples << "/" << b.stats.counterexamples;
  }
  return {fewer_or_equal >= 3, std::to_string(fewer_or_equal) +
                                   " of 5 entries; ce rounds with/without:" + os.str()};
}

}  // namespace
}  // namespace dforall

int main() {
  using dforall::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"solution quality on the optimization registry", dforall::TableOneQuality},
      {"Lyapunov verification is unsat", dforall::LyapunovVerification},
      {"error-control regression on the x^2 encoding", dforall::ErrorControlRegression},
      {"parameter-order guard", dforall::ParameterOrderGuard},
      {"oracle equivalence on random problems", dforall::OracleEquivalence},
      {"interval and contractor property suites", dforall::PropertySuites},
      {"local-opt counterexample rounds", dforall::LocalOptEffect},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), dforall::Seconds(start));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
