#include "dforall/bench.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dforall/frontend.h"

namespace dforall {

// Generated from bench/*.efsmt.
extern const std::vector<std::pair<std::string, std::string>> kBenchmarkSources;

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string FormatDouble(double v) {
  if (v == 0) v = 0;
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

const char* RuleName(BranchRule r) {
  return r == BranchRule::kRoundRobin ? "roundrobin" : "largest";
}

}  // namespace

BenchmarkEntry ParseBenchmark(std::string name, std::string text) {
  BenchmarkEntry e;
  e.name = std::move(name);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = Trim(line);
    if (t.rfind(";; @", 0) != 0) continue;
    const std::string body = t.substr(4);
    const auto sp = body.find(' ');
    const std::string key = body.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : Trim(body.substr(sp + 1));
    if (key == "objective") {
      e.objective = value;
    } else if (key == "global") {
      e.known_global = ParseRational(value);
    } else if (key == "expect") {
      e.expected = value == "unsat" ? Verdict::kUnsat : Verdict::kDeltaSat;
    } else if (key == "extended") {
      e.extended = true;
    }
  }
  e.text = std::move(text);
  return e;
}

const std::vector<BenchmarkEntry>& Registry() {
  static const std::vector<BenchmarkEntry> registry = [] {
    std::vector<BenchmarkEntry> r;
    for (const auto& [name, text] : kBenchmarkSources) r.push_back(ParseBenchmark(name, text));
    std::sort(r.begin(), r.end(),
              [](const BenchmarkEntry& a, const BenchmarkEntry& b) { return a.name < b.name; });
    return r;
  }();
  return registry;
}

const BenchmarkEntry* FindBenchmark(std::string_view name) {
  for (const BenchmarkEntry& e : Registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Expr ParseObjective(const Problem& problem, std::string_view term) {
  std::string doc;
  for (const Declaration& d : problem.vars) doc += DeclarationText(d) + "\n";
  doc += "(assert (>= " + std::string(term) + " 0))\n";
  const Problem p = Parse(doc);
  return p.assertions.at(0).lhs();
}

RunReport RunDocument(const std::string& name, std::string_view text, const SolverConfig& config,
                      std::string_view objective, const std::optional<Rational>& known_global) {
  const Problem problem = Parse(text);
  const CnfForallFormula formula = Normalize(problem);
  std::optional<Expr> obj;
  if (!objective.empty()) obj = ParseObjective(problem, objective);

  RunReport report;
  report.name = name;
  report.known_global = known_global;
  report.delta = config.delta();
  report.epsilon = config.epsilon();
  report.delta_prime = config.delta_prime();
  report.local_opt = config.local_opt;
  report.branch_rule = RuleName(config.branch_rule);

  const SolveResult r = Solve(formula, problem.InitialBox(), config);
  report.verdict = r.verdict;
  report.note = r.note;
  report.stats = r.stats;
  if (r.verdict == Verdict::kDeltaSat) {
    for (std::size_t i = 0; i < r.box.size(); ++i) {
      report.names.push_back(r.box.name(i));
      report.lo.push_back(r.box[i].lo());
      report.hi.push_back(r.box[i].hi());
    }
    if (obj) {
      try {
        report.objective = obj->Evaluate(r.box.MidpointEnv());
      } catch (const DomainError&) {
      }
      if (report.objective && known_global) {
        report.abs_error = std::fabs(*report.objective - ToDouble(*known_global));
      }
    }
  }
  return report;
}

RunReport RunBenchmark(const BenchmarkEntry& entry, const SolverConfig& config) {
  return RunDocument(entry.name, entry.text, config, entry.objective, entry.known_global);
}

void WriteText(std::ostream& os, const RunReport& report) {
  switch (report.verdict) {
    case Verdict::kDeltaSat:
      os << "delta-sat with delta = " << ToDecimalString(report.delta) << "\n";
      for (std::size_t i = 0; i < report.names.size(); ++i) {
        os << report.names[i] << " : [" << FormatDouble(report.lo[i]) << ", "
           << FormatDouble(report.hi[i]) << "]\n";
      }
      break;
    case Verdict::kUnsat:
      os << "unsat\n";
      break;
    case Verdict::kUnknown:
      os << "unknown (budget)\n";
      break;
  }
}

const std::vector<std::string>& CsvColumns() {
  static const std::vector<std::string> columns = {
      "name",      "verdict",    "objective",      "known_global", "abs_error",
      "branchings", "ce_rounds", "localopt_calls", "seconds"};
  return columns;
}

void WriteCsvHeader(std::ostream& os) {
  const auto& c = CsvColumns();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "\n";
}

void WriteCsvRow(std::ostream& os, const RunReport& r) {
  os << r.name << "," << ToString(r.verdict) << ","
     << (r.objective ? FormatDouble(*r.objective) : "") << ","
     << (r.known_global ? ToDecimalString(*r.known_global) : "") << ","
     << (r.abs_error ? FormatDouble(*r.abs_error) : "") << "," << r.stats.branchings << ","
     << r.stats.counterexamples << "," << r.stats.localopt_calls << ","
     << FormatDouble(r.stats.seconds) << "\n";
}

namespace {

nlohmann::json ToJsonValue(const RunReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["verdict"] = ToString(r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  nlohmann::json box = nlohmann::json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    box.push_back({{"name", r.names[i]}, {"lo", r.lo[i]}, {"hi", r.hi[i]}});
  }
  j["box"] = box;
  j["objective"] = r.objective ? nlohmann::json(*r.objective) : nlohmann::json(nullptr);
  j["known_global"] =
      r.known_global ? nlohmann::json(ToString(*r.known_global)) : nlohmann::json(nullptr);
  j["abs_error"] = r.abs_error ? nlohmann::json(*r.abs_error) : nlohmann::json(nullptr);
  j["stats"] = {{"branchings", r.stats.branchings},
                {"boxes_processed", r.stats.boxes_processed},
                {"prune_rounds", r.stats.prune_rounds},
                {"ce_rounds", r.stats.counterexamples},
                {"inner_branchings", r.stats.inner_branchings},
                {"inner_exhausted", r.stats.inner_exhausted},
                {"localopt_calls", r.stats.localopt_calls},
                {"localopt_improved", r.stats.localopt_improved},
                {"seconds", r.stats.seconds}};
  j["config"] = {{"delta", ToString(r.delta)},
                 {"epsilon", ToString(r.epsilon)},
                 {"delta_prime", ToString(r.delta_prime)},
                 {"local_opt", r.local_opt},
                 {"branch_rule", r.branch_rule}};
  return j;
}

}  // namespace

std::string ToJson(const RunReport& report, int indent) {
  return ToJsonValue(report).dump(indent);
}

std::string ToJson(const std::vector<RunReport>& reports, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunReport& r : reports) arr.push_back(ToJsonValue(r));
  return arr.dump(indent);
}

}  // namespace dforall
