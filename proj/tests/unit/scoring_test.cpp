#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ilpbench/reader.hpp"
#include "ilpbench/scoring.hpp"
#include "support/fixtures.hpp"
#include "support/metric_table.hpp"

namespace ilpbench {
namespace {

TEST(Metrics, HandComputedTable) {
  ASSERT_EQ(metric_table::kCases.size(), 20u);
  for (const metric_table::Case& m : metric_table::kCases) {
    EvalReport r = metrics(m.c);
    SCOPED_TRACE(testing::Message() << m.c.tp << "," << m.c.fp << "," << m.c.fn << "," << m.c.tn);
    EXPECT_NEAR(r.accuracy, m.acc, 1e-9);
    EXPECT_NEAR(r.precision, m.p, 1e-9);
    EXPECT_NEAR(r.recall, m.r, 1e-9);
    EXPECT_NEAR(r.f1, m.f1, 1e-9);
  }
}

TEST(MetricsProperty, BoundedAndF1IsTheHarmonicMean) {
  for (std::size_t tp = 0; tp < 6; ++tp)
    for (std::size_t fp = 0; fp < 6; ++fp)
      for (std::size_t fn = 0; fn < 6; ++fn)
        for (std::size_t tn = 0; tn < 6; ++tn) {
          EvalReport r = metrics({tp, fp, fn, tn});
          for (double v : {r.accuracy, r.precision, r.recall, r.f1}) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
          }
          if (r.precision + r.recall > 0) {
            ASSERT_NEAR(1.0 / r.f1, 0.5 * (1.0 / r.precision + 1.0 / r.recall), 1e-9);
          }
          ASSERT_LE(r.f1, std::max(r.precision, r.recall) + 1e-12);
          ASSERT_GE(r.f1 + 1e-12, std::min(r.precision, r.recall));
        }
}

TEST(EvaluateTheory, FamilyTheory) {
  Dataset d = fixtures::family_dataset();
  EvalReport r = evaluate_theory(d.bk, d.truth.rules, d.train_pos, d.train_neg);
  EXPECT_EQ(r.counts, (ConfusionCounts{2, 0, 0, 1}));
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(EvaluateTheory, BudgetOverrunIsAZeroReport) {
  Dataset d = fixtures::family_dataset();
  Program blowup = parse_program("ancestor(X,Y) :- parent(X,Y).\nancestor(X,Z) :- ancestor(X,Y), ancestor(Y,Z).");
  EvalReport r = evaluate_theory(d.bk, blowup, d.train_pos, d.train_neg, {.max_derived_facts = 2, .max_rounds = 10});
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.counts, ConfusionCounts{});
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(EvaluateTheory, UnsafeClausesBecomeWarnings) {
  Dataset d = fixtures::family_dataset();
  Program t = parse_program("ancestor(X,Y) :- parent(X,Z).");
  EvalReport r = evaluate_theory(d.bk, t, d.train_pos, d.train_neg);
  EXPECT_EQ(r.counts.tp, 0u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("ancestor(X,Y) :- parent(X,Z)."), std::string::npos);
}

const std::set<Predicate> kBk = {{"p1", 2}, {"p3", 2}, {"p4", 2}, {"p7", 2}, {"p8", 2}};
const Predicate kTarget{"p0", 2};

TEST(ClassifyError, WellFormedTheoryIsNone) {
  ErrorClass e = classify_error("p0(X,Y) :- p1(X,Z), p3(Z,Y).\n", kBk, kTarget);
  EXPECT_EQ(e.kind, ErrorKind::kNone);
  EXPECT_TRUE(e.reasons.empty());
  // intermediate definitions of BK predicates are fine
  EXPECT_EQ(classify_error("p3(X,Y) :- p8(X,Y).\np0(X,Y) :- p3(X,Y).", kBk, kTarget).kind, ErrorKind::kNone);
}

TEST(ClassifyError, SyntacticExhibit) {
  ErrorClass e = classify_error(fixtures::kSyntacticSnippet, kBk, kTarget);
  EXPECT_EQ(e.kind, ErrorKind::kSyntactic);
  EXPECT_TRUE(e.message.starts_with("line "));
}

TEST(ClassifyError, LogicalExhibit) {
  ErrorClass e = classify_error(fixtures::kLogicalSnippet, kBk, kTarget);
  EXPECT_EQ(e.kind, ErrorKind::kLogical);
  EXPECT_TRUE(e.has_reason(ErrorReason::Kind::kWrongTargetHead, "theory/0"));
  EXPECT_TRUE(e.has_reason(ErrorReason::Kind::kUnknownPredicate, "p/2"));
  EXPECT_TRUE(e.has_reason(ErrorReason::Kind::kUnknownPredicate, "pos/1"));
  EXPECT_TRUE(e.has_reason(ErrorReason::Kind::kUnsupportedConstruct));
}

TEST(ClassifyError, ProseIsSyntactic) {
  EXPECT_EQ(classify_error(fixtures::kProseResponse, kBk, kTarget).kind, ErrorKind::kSyntactic);
  EXPECT_EQ(classify_error("", kBk, kTarget).kind, ErrorKind::kSyntactic);
  EXPECT_EQ(classify_error("   \n", kBk, kTarget).kind, ErrorKind::kSyntactic);
}

TEST(ClassifyError, LogicalReasons) {
  auto reasons_of = [](std::string_view text) { return classify_error(text, kBk, kTarget); };
  EXPECT_TRUE(reasons_of("p0(X,Y) :- p9(X,Y).").has_reason(ErrorReason::Kind::kUnknownPredicate, "p9/2"));
  EXPECT_TRUE(reasons_of("p0(X,Y) :- p1(X).").has_reason(ErrorReason::Kind::kArityMismatch, "p1/1"));
  EXPECT_TRUE(reasons_of("q(X,Y) :- p1(X,Y).").has_reason(ErrorReason::Kind::kWrongTargetHead, "q/2"));
  EXPECT_TRUE(reasons_of("p0(X,Y) :- p1(X,Z).").has_reason(ErrorReason::Kind::kUnsafeClause));
  ErrorClass neg = reasons_of("p0(X,Y) :- p1(X,Y), \\+ p3(X,Y).");
  EXPECT_EQ(neg.kind, ErrorKind::kLogical);
  EXPECT_TRUE(neg.has_reason(ErrorReason::Kind::kUnsupportedConstruct));
  EXPECT_FALSE(neg.has_reason(ErrorReason::Kind::kUnknownPredicate));
}

TEST(ClassifyError, FencedResponse) {
  const std::string reply = "Here is the theory:\n```prolog\np0(A,B):-p8(A,B).\n```\n";
  EXPECT_EQ(classify_error(reply, kBk, kTarget).kind, ErrorKind::kNone);
}

TEST(ErrorReason, TextRoundTrip) {
  ErrorReason r{ErrorReason::Kind::kUnknownPredicate, "pos/1"};
  EXPECT_EQ(r.to_string(), "UnknownPredicate(pos/1)");
  EXPECT_EQ(ErrorReason::parse(r.to_string()), r);
  EXPECT_THROW(ErrorReason::parse("Bogus(x)"), std::invalid_argument);
  EXPECT_THROW(ErrorReason::parse("UnknownPredicate"), std::invalid_argument);
  EXPECT_EQ(parse_error_kind(error_kind_name(ErrorKind::kLogical)), ErrorKind::kLogical);
}

TEST(TallyErrors, Shares) {
  const std::vector<ErrorKind> kinds = {ErrorKind::kSyntactic, ErrorKind::kLogical, ErrorKind::kLogical,
                                        ErrorKind::kLogical, ErrorKind::kNone};
  ErrorShare s = tally_errors("m", kinds);
  EXPECT_EQ(s.iterations, 5u);
  EXPECT_EQ(s.erroneous, 4u);
  EXPECT_DOUBLE_EQ(s.syntactic_pct, 25.0);
  EXPECT_DOUBLE_EQ(s.logical_pct, 75.0);
  ErrorShare none = tally_errors("m", std::vector<ErrorKind>{ErrorKind::kNone});
  EXPECT_EQ(none.syntactic_pct, 0.0);
  EXPECT_EQ(none.logical_pct, 0.0);
}

}  // namespace
}  // namespace ilpbench
