#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dforall/bench.h"
#include "dforall/frontend.h"
#include "dforall/solver.h"

namespace {

using dforall::Verdict;

constexpr int kExitInputError = 3;

int ExitCode(Verdict v) {
  switch (v) {
    case Verdict::kDeltaSat:
      return 0;
    case Verdict::kUnsat:
      return 1;
    case Verdict::kUnknown:
      return 2;
  }
  return 2;
}

struct Flags {
  std::string delta{"0.001"};
  std::string epsilon_factor{"0.99"};
  std::string delta_prime_factor{"0.98"};
  bool no_local_opt{false};
  std::string branch{"largest"};
  double budget_seconds{0};
  bool json{false};
};

void AddSolverFlags(CLI::App* app, Flags* f) {
  app->add_option("--delta", f->delta, "precision delta (rational or decimal)");
  app->add_option("--epsilon-factor", f->epsilon_factor, "epsilon as a fraction of delta");
  app->add_option("--delta-prime-factor", f->delta_prime_factor,
                  "counterexample-search delta as a fraction of delta");
  app->add_flag("--no-local-opt", f->no_local_opt, "disable counterexample refinement");
  app->add_option("--branch", f->branch, "branching rule")
      ->check(CLI::IsMember({"largest", "roundrobin"}));
  app->add_option("--budget-seconds", f->budget_seconds, "wall-clock budget, 0 for none");
  app->add_flag("--json", f->json, "print a JSON report");
}

dforall::SolverConfig MakeConfig(const Flags& f) {
  dforall::SolverConfig config(dforall::ParseRational(f.delta),
                               dforall::ParseRational(f.epsilon_factor),
                               dforall::ParseRational(f.delta_prime_factor));
  config.local_opt = !f.no_local_opt;
  config.branch_rule = f.branch == "roundrobin" ? dforall::BranchRule::kRoundRobin
                                                : dforall::BranchRule::kLargestFirst;
  config.time_budget = f.budget_seconds;
  return config;
}

int RunSolve(const std::string& path, const Flags& flags) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": cannot open file\n";
    return kExitInputError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const dforall::SolverConfig config = MakeConfig(flags);
    const dforall::RunReport report = dforall::RunDocument(path, buffer.str(), config);
    if (flags.json) {
      std::cout << dforall::ToJson(report) << "\n";
    } else {
      dforall::WriteText(std::cout, report);
    }
    return ExitCode(report.verdict);
  } catch (const dforall::ParseError& e) {
    std::cerr << path << ":" << e.what() << "\n";
  } catch (const dforall::NormalizeError& e) {
    std::cerr << path << ": error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

int RunBench(const std::vector<std::string>& names, const Flags& flags, bool compare_localopt,
             bool extended, const std::string& csv_path) {
  std::vector<const dforall::BenchmarkEntry*> entries;
  for (const std::string& n : names) {
    if (n == "all") {
      for (const auto& e : dforall::Registry()) {
        if (extended || !e.extended) entries.push_back(&e);
      }
      continue;
    }
    const dforall::BenchmarkEntry* e = dforall::FindBenchmark(n);
    if (!e) {
      std::cerr << "error: unknown benchmark '" << n << "'\n";
      return kExitInputError;
    }
    entries.push_back(e);
  }
  std::optional<dforall::SolverConfig> config;
  try {
    config = MakeConfig(flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::vector<dforall::RunReport> reports;
  bool all_expected = true;
  for (const dforall::BenchmarkEntry* e : entries) {
    dforall::RunReport r = dforall::RunBenchmark(*e, *config);
    all_expected = all_expected && r.verdict == e->expected;
    if (!flags.json) {
      std::cout << "== " << e->name << "\n";
      dforall::WriteText(std::cout, r);
      if (r.objective) std::cout << "objective = " << *r.objective << "\n";
      std::cout << "branchings = " << r.stats.branchings
                << ", ce_rounds = " << r.stats.counterexamples << ", seconds = " << r.stats.seconds
                << "\n";
    }
    reports.push_back(r);
    if (compare_localopt) {
      dforall::SolverConfig other = *config;
      other.local_opt = !config->local_opt;
      dforall::RunReport s = dforall::RunBenchmark(*e, other);
      s.name = e->name + (other.local_opt ? "/local-opt" : "/no-local-opt");
      const dforall::RunReport& with = other.local_opt ? s : r;
      const dforall::RunReport& without = other.local_opt ? r : s;
      if (!flags.json) {
        std::cout << "compare: ce_rounds " << with.stats.counterexamples << " with local-opt, "
                  << without.stats.counterexamples << " without; time ratio "
                  << (with.stats.seconds > 0 ? without.stats.seconds / with.stats.seconds : 0)
                  << "\n";
      }
      reports.push_back(s);
    }
  }
  if (flags.json) std::cout << dforall::ToJson(reports) << "\n";
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << csv_path << ": cannot write\n";
      return kExitInputError;
    }
    dforall::WriteCsvHeader(csv);
    for (const auto& r : reports) dforall::WriteCsvRow(csv, r);
  }
  return all_expected ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exists-forall delta-decision solver"};
  app.require_subcommand(1);

  Flags solve_flags;
  std::string path;
  CLI::App* solve = app.add_subcommand("solve", "solve one input file");
  solve->add_option("file", path, "input file")->required();
  AddSolverFlags(solve, &solve_flags);

  Flags bench_flags;
  std::vector<std::string> names;
  bool compare_localopt = false;
  bool extended = false;
  std::string csv_path;
  CLI::App* bench = app.add_subcommand("bench", "run registry entries");
  bench->add_option("names", names, "entry names or 'all'")->required();
  AddSolverFlags(bench, &bench_flags);
  bench->add_flag("--compare-localopt", compare_localopt, "run with and without local-opt");
  bench->add_flag("--extended", extended, "include extended entries in 'all'");
  bench->add_option("--csv", csv_path, "write a CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }
  if (*solve) return RunSolve(path, solve_flags);
  return RunBench(names, bench_flags, compare_localopt, extended, csv_path);
}
