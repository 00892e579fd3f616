#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ilpbench/grader.hpp"
#include "ilpbench/refine.hpp"

namespace ilpbench {
namespace {

RefinementTrace make_trace(Category c, double noise, std::vector<double> f1s, std::vector<double> elapsed,
                           double test_f1, std::string backend = "m") {
  RefinementTrace t;
  t.meta.category = c;
  t.meta.noise = t.meta.missing = t.meta.owa = noise;
  t.backend = std::move(backend);
  for (std::size_t i = 0; i < f1s.size(); ++i) {
    IterationRecord r;
    r.index = i + 1;
    r.report.f1 = f1s[i];
    r.elapsed_s = elapsed[i];
    t.iterations.push_back(r);
  }
  t.test_report.f1 = test_f1;
  return t;
}

TEST(SampleStats, BestTrainF1AndTimeToReachIt) {
  SampleStats s = sample_stats(make_trace(Category::kChain, 0.1, {0.2, 0.8, 0.5}, {3, 4, 5}, 0.6));
  EXPECT_EQ(s.f1_train, 0.8);
  EXPECT_EQ(s.time_s, 7.0);
  EXPECT_EQ(s.index, 2u);
  EXPECT_EQ(s.f1_test, 0.6);
  // ties keep the earliest
  EXPECT_EQ(sample_stats(make_trace(Category::kChain, 0.1, {0.5, 0.5}, {1, 1}, 0)).index, 1u);
  EXPECT_THROW(sample_stats(RefinementTrace{}), std::invalid_argument);
}

TEST(Grade, CellMeansAndDeviation) {
  std::vector<RefinementTrace> ts = {make_trace(Category::kRdg, 0.2, {0.6}, {1}, 0.5),
                                     make_trace(Category::kRdg, 0.2, {0.8}, {3}, 0.7)};
  GradeTable g = grade(ts, {{Category::kRdg}, {0.2}, 2});
  ASSERT_EQ(g.cells.size(), 1u);
  const GradedCell& c = g.cells[0];
  EXPECT_NEAR(c.mean_f1_train, 0.7, 1e-12);
  EXPECT_NEAR(c.mean_f1_test, 0.6, 1e-12);
  EXPECT_NEAR(c.mean_time_s, 2.0, 1e-12);
  EXPECT_NEAR(c.sd_f1_train, std::sqrt(0.02), 1e-12);  // n-1 denominator
  EXPECT_NEAR(c.sd_time_s, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(g.backend, "m");
}

TEST(Grade, IncompleteCellsAreNamed) {
  std::vector<RefinementTrace> ts = {make_trace(Category::kRdg, 0.2, {0.6}, {1}, 0.5)};
  try {
    grade(ts, {{Category::kRdg, Category::kMixed}, {0.2}, 2});
    FAIL();
  } catch (const IncompleteGrid& e) {
    EXPECT_EQ(e.cells(), (std::vector<std::string>{"rdg@0.2: have 1 of 2", "mixed@0.2: have 0 of 2"}));
  }
  EXPECT_THROW(grade(ts, {{}, {0.2}, 1}), std::invalid_argument);
}

TEST(Grade, FullGridHas21RowsInGridOrder) {
  std::vector<RefinementTrace> ts;
  for (Category c : kAllCategories)
    for (double n : kDefaultLevels)
      for (int s = 0; s < 2; ++s) ts.push_back(make_trace(c, n, {1.0}, {0.5}, 1.0, s == 0 ? "a" : "b"));
  GradeTable g = grade(ts, {{kAllCategories.begin(), kAllCategories.end()}, {kDefaultLevels.begin(), kDefaultLevels.end()}, 2});
  ASSERT_EQ(g.cells.size(), 21u);
  EXPECT_EQ(g.cells[0].category, Category::kChain);
  EXPECT_EQ(g.cells[1].noise, 0.2);
  EXPECT_EQ(g.backend, "a+b");

  const std::string csv = grade_csv(g);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "category,noise,n,mean_f1_train,mean_f1_test,mean_time_s");
  std::getline(in, line);
  EXPECT_EQ(line, "CHAIN,0.1,2,1.000000,1.000000,0.500000");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 21u);

  std::size_t long_rows = 0;
  std::istringstream lin(grade_long_csv(g));
  while (std::getline(lin, line)) ++long_rows;
  EXPECT_EQ(long_rows, 1u + 21u * 6u);
}

TEST(Grade, JsonAgreesWithCsv) {
  std::vector<RefinementTrace> ts = {make_trace(Category::kDrdgRec, 0.3, {0.1, 0.4}, {2, 2}, 0.25),
                                     make_trace(Category::kDrdgRec, 0.3, {0.3}, {5}, 0.5)};
  GradeTable g = grade(ts, {{Category::kDrdgRec}, {0.3}, 2});
  auto j = nlohmann::json::parse(grade_json(g));
  ASSERT_EQ(j["cells"].size(), 1u);
  const auto& c = j["cells"][0];
  EXPECT_EQ(c["category"], "DRDG_REC");
  EXPECT_NEAR(c["mean_f1_train"].get<double>(), 0.35, 1e-12);
  EXPECT_NEAR(c["mean_time_s"].get<double>(), 4.5, 1e-12);
  EXPECT_EQ(c["samples"].size(), 2u);
  EXPECT_NE(grade_csv(g).find("DRDG_REC,0.3,2,0.350000,0.375000,4.500000"), std::string::npos);
}

TEST(Grade, TracesOutsideTheGridAreIgnored) {
  std::vector<RefinementTrace> ts = {make_trace(Category::kChain, 0.1, {1}, {1}, 1),
                                     make_trace(Category::kMixed, 0.3, {0}, {1}, 0)};
  GradeTable g = grade(ts, {{Category::kChain}, {0.1}, 1});
  EXPECT_EQ(g.cells.size(), 1u);
}

TEST(ErrorDistribution, PerBackendShares) {
  auto with_kinds = [](std::string label, std::vector<ErrorKind> kinds) {
    RefinementTrace t;
    t.backend = std::move(label);
    for (ErrorKind k : kinds) {
      IterationRecord r;
      r.error_class.kind = k;
      t.iterations.push_back(r);
    }
    return t;
  };
  std::vector<RefinementTrace> ts = {
      with_kinds("gemma", {ErrorKind::kSyntactic, ErrorKind::kSyntactic}),
      with_kinds("gpt", {ErrorKind::kLogical, ErrorKind::kNone}),
      with_kinds("gemma", {ErrorKind::kSyntactic}),
  };
  auto rows = error_distribution(ts);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].label, "gemma");
  EXPECT_EQ(rows[0].iterations, 3u);
  EXPECT_EQ(rows[0].syntactic_pct, 100.0);
  EXPECT_EQ(rows[0].logical_pct, 0.0);
  EXPECT_EQ(rows[1].logical_pct, 100.0);
  EXPECT_EQ(error_distribution_csv(rows),
            "backend,iterations,erroneous,syntactic_pct,logical_pct\ngemma,3,3,100.0,0.0\ngpt,2,1,0.0,100.0\n");
}

}  // namespace
}  // namespace ilpbench
