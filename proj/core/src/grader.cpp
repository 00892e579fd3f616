#include "ilpbench/grader.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json_codec.hpp"

namespace ilpbench {

using nlohmann::ordered_json;

SampleStats sample_stats(const RefinementTrace& trace) {
  if (trace.iterations.empty()) throw std::invalid_argument("trace has no iterations");
  SampleStats s;
  double elapsed = 0.0;
  for (const IterationRecord& it : trace.iterations) {
    elapsed += it.elapsed_s;
    if (s.index == 0 || it.report.f1 > s.f1_train) {
      s.f1_train = it.report.f1;
      s.time_s = elapsed;
      s.index = it.index;
    }
  }
  s.f1_test = trace.test_report.f1;
  return s;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string level(double v) { return fmt("%g", v); }

bool same_level(double a, double b) { return std::fabs(a - b) < 1e-9; }

double mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

IncompleteGrid::IncompleteGrid(std::vector<std::string> cells)
    : std::runtime_error("incomplete grid: " + join(cells, "; ")), cells_(std::move(cells)) {}

GradeTable grade(std::span<const RefinementTrace> traces, const GradeGrid& grid) {
  if (grid.categories.empty() || grid.noise_levels.empty() || grid.samples == 0)
    throw std::invalid_argument("grid is empty");
  GradeTable table;
  std::vector<std::string> labels;
  for (const RefinementTrace& t : traces) {
    if (std::find(labels.begin(), labels.end(), t.backend) == labels.end()) labels.push_back(t.backend);
  }
  table.backend = join(labels, "+");

  std::vector<std::string> missing;
  for (Category c : grid.categories) {
    for (double n : grid.noise_levels) {
      GradedCell cell;
      cell.category = c;
      cell.noise = n;
      for (const RefinementTrace& t : traces) {
        if (t.meta.category == c && same_level(t.meta.noise, n)) cell.samples.push_back(sample_stats(t));
      }
      cell.n = cell.samples.size();
      if (cell.n != grid.samples) {
        missing.push_back(std::string(category_slug(c)) + "@" + level(n) + ": have " + std::to_string(cell.n) +
                          " of " + std::to_string(grid.samples));
        continue;
      }
      std::vector<double> tr, te, tm;
      for (const SampleStats& s : cell.samples) {
        tr.push_back(s.f1_train);
        te.push_back(s.f1_test);
        tm.push_back(s.time_s);
      }
      cell.mean_f1_train = mean(tr);
      cell.mean_f1_test = mean(te);
      cell.mean_time_s = mean(tm);
      cell.sd_f1_train = sd(tr);
      cell.sd_f1_test = sd(te);
      cell.sd_time_s = sd(tm);
      table.cells.push_back(std::move(cell));
    }
  }
  if (!missing.empty()) throw IncompleteGrid(std::move(missing));
  return table;
}

std::string grade_csv(const GradeTable& table) {
  std::string out = "category,noise,n,mean_f1_train,mean_f1_test,mean_time_s\n";
  for (const GradedCell& c : table.cells) {
    out += std::string(category_name(c.category)) + "," + level(c.noise) + "," + std::to_string(c.n) + "," +
           fmt("%.6f", c.mean_f1_train) + "," + fmt("%.6f", c.mean_f1_test) + "," + fmt("%.6f", c.mean_time_s) + "\n";
  }
  return out;
}

std::string grade_json(const GradeTable& table) {
  ordered_json j;
  j["backend"] = table.backend;
  ordered_json cells = ordered_json::array();
  for (const GradedCell& c : table.cells) {
    ordered_json cj;
    cj["category"] = std::string(category_name(c.category));
    cj["noise"] = c.noise;
    cj["n"] = c.n;
    cj["mean_f1_train"] = c.mean_f1_train;
    cj["mean_f1_test"] = c.mean_f1_test;
    cj["mean_time_s"] = c.mean_time_s;
    cj["sd_f1_train"] = c.sd_f1_train;
    cj["sd_f1_test"] = c.sd_f1_test;
    cj["sd_time_s"] = c.sd_time_s;
    ordered_json samples = ordered_json::array();
    for (const SampleStats& s : c.samples) {
      samples.push_back({{"f1_train", s.f1_train}, {"f1_test", s.f1_test}, {"time_s", s.time_s}, {"index", s.index}});
    }
    cj["samples"] = samples;
    cells.push_back(std::move(cj));
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

std::string grade_long_csv(const GradeTable& table) {
  std::string out = "category,noise,metric,value\n";
  for (const GradedCell& c : table.cells) {
    const std::string prefix = std::string(category_name(c.category)) + "," + level(c.noise) + ",";
    const std::pair<const char*, double> rows[] = {
        {"mean_f1_train", c.mean_f1_train}, {"mean_f1_test", c.mean_f1_test}, {"mean_time_s", c.mean_time_s},
        {"sd_f1_train", c.sd_f1_train},     {"sd_f1_test", c.sd_f1_test},     {"sd_time_s", c.sd_time_s},
    };
    for (const auto& [name, v] : rows) out += prefix + name + "," + fmt("%.6f", v) + "\n";
  }
  return out;
}

std::vector<ErrorShare> error_distribution(std::span<const RefinementTrace> traces) {
  std::vector<std::string> labels;
  std::vector<std::vector<ErrorKind>> kinds;
  for (const RefinementTrace& t : traces) {
    auto it = std::find(labels.begin(), labels.end(), t.backend);
    std::size_t k = static_cast<std::size_t>(it - labels.begin());
    if (it == labels.end()) {
      labels.push_back(t.backend);
      kinds.emplace_back();
    }
    for (const IterationRecord& r : t.iterations) kinds[k].push_back(r.error_class.kind);
  }
  std::vector<ErrorShare> out;
  for (std::size_t i = 0; i < labels.size(); ++i) out.push_back(tally_errors(labels[i], kinds[i]));
  return out;
}

std::string error_distribution_csv(const std::vector<ErrorShare>& rows) {
  std::string out = "backend,iterations,erroneous,syntactic_pct,logical_pct\n";
  for (const ErrorShare& r : rows) {
    out += r.label + "," + std::to_string(r.iterations) + "," + std::to_string(r.erroneous) + "," +
           fmt("%.1f", r.syntactic_pct) + "," + fmt("%.1f", r.logical_pct) + "\n";
  }
  return out;
}

}  // namespace ilpbench
