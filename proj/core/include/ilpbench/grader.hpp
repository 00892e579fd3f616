#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilpbench/refine.hpp"
#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench {

struct SampleStats {
  double f1_train = 0.0;   // best training F1 over the iterations
  double time_s = 0.0;     // cumulative elapsed time through that iteration
  double f1_test = 0.0;    // test F1 of the trace's best iteration
  std::size_t index = 0;   // 1-based iteration of the best training F1
};

/// Earliest iteration wins ties. Throws std::invalid_argument on an empty trace.
SampleStats sample_stats(const RefinementTrace& trace);

struct GradeGrid {
  std::vector<Category> categories;
  std::vector<double> noise_levels;
  std::size_t samples = 0;
};

struct GradedCell {
  Category category = Category::kChain;
  double noise = 0.0;
  std::size_t n = 0;
  double mean_f1_train = 0.0;
  double mean_f1_test = 0.0;
  double mean_time_s = 0.0;
  /// Sample standard deviations; 0 for a single sample.
  double sd_f1_train = 0.0;
  double sd_f1_test = 0.0;
  double sd_time_s = 0.0;
  std::vector<SampleStats> samples;
};

struct GradeTable {
  std::string backend;
  std::vector<GradedCell> cells;  // categories outer, noise levels inner
};

class IncompleteGrid : public std::runtime_error {
 public:
  explicit IncompleteGrid(std::vector<std::string> cells);
  /// "<category>@<noise>: have k of S" entries.
  const std::vector<std::string>& cells() const noexcept { return cells_; }

 private:
  std::vector<std::string> cells_;
};

/// Means per (category, noise) cell. Every cell must hold exactly
/// `grid.samples` traces; traces outside the grid are ignored.
GradeTable grade(std::span<const RefinementTrace> traces, const GradeGrid& grid);

/// `category,noise,n,mean_f1_train,mean_f1_test,mean_time_s`
std::string grade_csv(const GradeTable& table);
std::string grade_json(const GradeTable& table);
/// `category,noise,metric,value`, one row per cell statistic.
std::string grade_long_csv(const GradeTable& table);

/// One row per backend label, in order of first appearance.
std::vector<ErrorShare> error_distribution(std::span<const RefinementTrace> traces);
std::string error_distribution_csv(const std::vector<ErrorShare>& rows);

}  // namespace ilpbench
