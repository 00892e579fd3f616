#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilpbench/fixpoint.hpp"
#include "ilpbench/llm.hpp"
#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench {

enum class Metric { kAccuracy, kPrecision, kRecall, kF1 };

std::string_view metric_name(Metric metric);
Metric parse_metric(std::string_view text);
double metric_value(const EvalReport& report, Metric metric);

/// kAuto measures wall time for the http backend and records 0 s for mocks,
/// which keeps mock traces byte-reproducible.
enum class ClockMode { kAuto, kWall, kNone };

/// kStateless sends only the initial prompt, the last reply and the new feedback.
enum class HistoryMode { kFull, kStateless };

struct LoopConfig {
  std::size_t max_iter = 4;
  std::map<Metric, double> thresholds = {
      {Metric::kAccuracy, 1.0}, {Metric::kPrecision, 1.0}, {Metric::kRecall, 1.0}, {Metric::kF1, 1.0}};
  EvalLimits limits;
  bool strip_recursion = true;
  HistoryMode history = HistoryMode::kFull;
  ClockMode clock = ClockMode::kAuto;

  /// Throws std::invalid_argument.
  void validate() const;
  bool thresholds_met(const EvalReport& report) const;
};

struct IterationRecord {
  std::size_t index = 0;  // 1-based
  std::string prompt;
  std::string raw_response;
  std::string extracted;
  std::optional<Program> theory;
  /// Recursive clauses removed before evaluation.
  std::vector<Clause> stripped;
  ErrorClass error_class;
  EvalReport report;
  double latency_s = 0.0;
  double elapsed_s = 0.0;
};

struct RefinementTrace {
  DatasetMeta meta;
  std::string backend;
  std::vector<IterationRecord> iterations;
  std::size_t best_index = 0;  // 1-based, 0 when empty
  EvalReport test_report;
  double total_elapsed_s = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

/// Raised when the backend fails; carries the iterations completed so far.
class InductionAborted : public BackendError {
 public:
  InductionAborted(const BackendError& cause, RefinementTrace partial)
      : BackendError(cause.status(), cause.body(), cause.what()), trace_(std::move(partial)) {}

  const RefinementTrace& trace() const noexcept { return trace_; }

 private:
  RefinementTrace trace_;
};

/// Runs the generate, evaluate, feedback loop on the training split and
/// re-scores the best iteration on the test split.
RefinementTrace run_induction(const Dataset& dataset, const BackendConfig& backend, const LoopConfig& config);

/// Same, with a caller-owned backend.
RefinementTrace run_induction(const Dataset& dataset, Backend& backend, const std::string& label,
                              const LoopConfig& config, bool wall_clock);

/// 1-based index of the highest accuracy, earliest on ties. 0 when empty.
std::size_t best_index(std::span<const IterationRecord> iterations);

/// Throws std::invalid_argument on an empty trace.
const IterationRecord& best_iteration(const RefinementTrace& trace);

std::string trace_to_json(const RefinementTrace& trace);
/// Throws std::runtime_error on malformed input.
RefinementTrace trace_from_json(std::string_view text);

}  // namespace ilpbench
