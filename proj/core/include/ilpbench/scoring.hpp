#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilpbench/fixpoint.hpp"
#include "ilpbench/logic.hpp"

namespace ilpbench {

struct EvalReport {
  ConfusionCounts counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<Atom> misclassified_pos;
  std::vector<Atom> misclassified_neg;
  std::vector<std::string> warnings;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Metrics from confusion counts. Every 0/0 ratio is 0.
EvalReport metrics(const ConfusionCounts& counts);

/// classify_examples plus metrics. Skipped unsafe clauses become warnings;
/// BudgetExceeded yields an all-zero report carrying a warning.
EvalReport evaluate_theory(const FactSet& bk, const Program& theory, std::span<const Atom> pos,
                           std::span<const Atom> neg, const EvalLimits& limits = {});

/// All-zero report, used for iterations without a usable theory.
EvalReport zero_report(std::vector<std::string> warnings = {});

enum class ErrorKind { kNone, kSyntactic, kLogical };

std::string_view error_kind_name(ErrorKind kind);
ErrorKind parse_error_kind(std::string_view text);

struct ErrorReason {
  enum class Kind { kUnknownPredicate, kWrongTargetHead, kUnsafeClause, kUnsupportedConstruct, kArityMismatch };

  Kind kind;
  std::string detail;

  /// e.g. "UnknownPredicate(pos/1)".
  std::string to_string() const;
  static ErrorReason parse(std::string_view text);

  friend bool operator==(const ErrorReason&, const ErrorReason&) = default;
};

struct ErrorClass {
  ErrorKind kind = ErrorKind::kNone;
  std::vector<ErrorReason> reasons;
  /// Parser message for syntactic errors.
  std::string message;

  bool has_reason(ErrorReason::Kind k, std::string_view detail = {}) const;

  friend bool operator==(const ErrorClass&, const ErrorClass&) = default;
};

/// SYNTACTIC when the extracted text is empty, holds no clause, or is not
/// well-formed clause text. LOGICAL when it is well-formed but some clause
/// defines or calls a predicate outside `bk_predicates` and `target`, is
/// unsafe, or leaves the Horn fragment. Heads that are BK predicates are
/// accepted, since intermediate rules define them.
ErrorClass classify_error(std::string_view raw_response, const std::set<Predicate>& bk_predicates,
                          const Predicate& target);

struct ErrorShare {
  std::string label;
  std::size_t iterations = 0;
  std::size_t erroneous = 0;
  std::size_t syntactic = 0;
  std::size_t logical = 0;
  /// Percentages over erroneous iterations; 0 when there are none.
  double syntactic_pct = 0.0;
  double logical_pct = 0.0;
};

/// Tallies one backend's iteration error kinds.
ErrorShare tally_errors(std::string label, std::span<const ErrorKind> kinds);

std::string report_to_json(const EvalReport& report);

}  // namespace ilpbench
