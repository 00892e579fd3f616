#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ilpbench/logic.hpp"

namespace ilpbench {

struct EvalLimits {
  std::size_t max_derived_facts = 1'000'000;
  std::size_t max_rounds = 10'000;
};

/// Thrown when evaluation hits an EvalLimits bound.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a ground atom is listed as both a positive and a negative example.
class OverlappingExamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Least Herbrand model of `bk` plus the range-restricted clauses of
/// `theory`, by semi-naive bottom-up iteration. Clauses that are not range
/// restricted are skipped and appended to `skipped` when given.
///
/// The result lists `bk` in its own order followed by derived atoms in
/// derivation order.
FactSet least_model(const FactSet& bk, const Program& theory, const EvalLimits& limits = {},
                    std::vector<Clause>* skipped = nullptr);

/// `query` must be ground.
bool entails(const FactSet& bk, const Program& theory, const Atom& query,
             const EvalLimits& limits = {});

struct Classification {
  ConfusionCounts counts;
  std::vector<Atom> misclassified_pos;  // false negatives
  std::vector<Atom> misclassified_neg;  // false positives
  std::vector<Clause> skipped;
};

/// Scores `theory` against the examples with a single least-model computation.
Classification classify_examples(const FactSet& bk, const Program& theory, std::span<const Atom> pos,
                                 std::span<const Atom> neg, const EvalLimits& limits = {});

}  // namespace ilpbench
