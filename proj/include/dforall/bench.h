#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dforall/expr.h"
#include "dforall/formula.h"
#include "dforall/rational.h"
#include "dforall/solver.h"

namespace dforall {

/// A registry entry, stored as input text. Header comments carry metadata:
///
///   ;; @objective <term over the declared variables>
///   ;; @global <rational>
///   ;; @expect delta-sat | unsat
///   ;; @extended
struct BenchmarkEntry {
  std::string name;
  std::string text;
  std::string objective;  // empty for decision entries
  std::optional<Rational> known_global;
  Verdict expected{Verdict::kDeltaSat};
  bool extended{false};
};

/// Reads the metadata lines of a benchmark document.
BenchmarkEntry ParseBenchmark(std::string name, std::string text);

/// Entries compiled from bench/*.efsmt, sorted by name.
const std::vector<BenchmarkEntry>& Registry();
/// nullptr for an unknown name.
const BenchmarkEntry* FindBenchmark(std::string_view name);

/// Parses an objective term against the declarations of a problem.
Expr ParseObjective(const Problem& problem, std::string_view term);

/// What a run produced, plus the configuration that produced it.
struct RunReport {
  std::string name;
  Verdict verdict{Verdict::kUnknown};
  std::string note;
  std::vector<std::string> names;
  std::vector<double> lo;
  std::vector<double> hi;
  std::optional<double> objective;
  std::optional<Rational> known_global;
  std::optional<double> abs_error;
  SolverStats stats;
  Rational delta;
  Rational epsilon;
  Rational delta_prime;
  bool local_opt{true};
  std::string branch_rule;
};

/// Parses, normalizes and solves one document. Throws ParseError or
/// NormalizeError on bad input.
RunReport RunDocument(const std::string& name, std::string_view text, const SolverConfig& config,
                      std::string_view objective = {},
                      const std::optional<Rational>& known_global = std::nullopt);

RunReport RunBenchmark(const BenchmarkEntry& entry, const SolverConfig& config);

/// Text mode: verdict line, then `name : [lo, hi]` per variable when delta-sat.
void WriteText(std::ostream& os, const RunReport& report);

/// Columns: name, verdict, objective, known_global, abs_error, branchings,
/// ce_rounds, localopt_calls, seconds.
const std::vector<std::string>& CsvColumns();
void WriteCsvHeader(std::ostream& os);
void WriteCsvRow(std::ostream& os, const RunReport& report);

std::string ToJson(const RunReport& report, int indent = 2);
std::string ToJson(const std::vector<RunReport>& reports, int indent = 2);

}  // namespace dforall
