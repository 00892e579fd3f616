#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ilpbench/fixpoint.hpp"
#include "ilpbench/reader.hpp"
#include "oracle/naive_model.hpp"
#include "support/fixtures.hpp"

namespace ilpbench {
namespace {

std::set<Atom> as_set(const FactSet& s) { return {s.begin(), s.end()}; }

FactSet to_factset(const std::vector<Atom>& atoms) {
  FactSet s;
  for (const Atom& a : atoms) s.insert(a);
  return s;
}

TEST(LeastModel, FamilyAncestors) {
  FactSet m = least_model(fixtures::family_bk(), fixtures::family_rules());
  // 4 parent facts plus 6 ancestor pairs
  EXPECT_EQ(m.size(), 10u);
  EXPECT_TRUE(m.contains(ground_atom("ancestor", {"john", "susan"})));
  EXPECT_TRUE(m.contains(ground_atom("ancestor", {"john", "robert"})));
  EXPECT_FALSE(m.contains(ground_atom("ancestor", {"mary", "robert"})));
  // bk first, in its own order
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m.atoms()[i], fixtures::family_bk().atoms()[i]);
}

TEST(LeastModel, UnsafeClausesAreSkipped) {
  std::vector<Clause> skipped;
  Program t = parse_program("q(X,Y) :- p(X).\nr(X) :- p(X).");
  FactSet m = least_model({ground_atom("p", {"a"})}, t, {}, &skipped);
  ASSERT_EQ(skipped.size(), 1u);
  EXPECT_EQ(render_clause(skipped[0]), "q(X,Y) :- p(X).");
  EXPECT_TRUE(m.contains(ground_atom("r", {"a"})));
}

TEST(LeastModel, GroundFactsInTheTheory) {
  FactSet m = least_model({}, parse_program("p(a).\nq(X) :- p(X)."));
  EXPECT_EQ(as_set(m), (std::set<Atom>{ground_atom("p", {"a"}), ground_atom("q", {"a"})}));
}

TEST(LeastModel, RepeatedVariablesAndConstantsInBodies) {
  FactSet bk{ground_atom("e", {"a", "a"}), ground_atom("e", {"a", "b"}), ground_atom("e", {"b", "b"})};
  FactSet m = least_model(bk, parse_program("loop(X) :- e(X,X).\nfrom_a(Y) :- e(a,Y)."));
  EXPECT_TRUE(m.contains(ground_atom("loop", {"a"})));
  EXPECT_TRUE(m.contains(ground_atom("loop", {"b"})));
  EXPECT_TRUE(m.contains(ground_atom("from_a", {"b"})));
  EXPECT_FALSE(m.contains(ground_atom("from_a", {"c"})));
  EXPECT_EQ(m.size(), 7u);
}

TEST(LeastModel, BudgetIsEnforced) {
  FactSet bk;
  for (int i = 0; i < 30; ++i) bk.insert(ground_atom("e", {"n" + std::to_string(i), "n" + std::to_string(i + 1)}));
  Program tc = parse_program("t(X,Y) :- e(X,Y).\nt(X,Z) :- t(X,Y), t(Y,Z).");
  EXPECT_THROW(least_model(bk, tc, {.max_derived_facts = 50, .max_rounds = 10'000}), BudgetExceeded);
  EXPECT_THROW(least_model(bk, tc, {.max_derived_facts = 1'000'000, .max_rounds = 2}), BudgetExceeded);
  EXPECT_EQ(least_model(bk, tc).size(), 30u + 465u);
}

TEST(Entails, RequiresAGroundQuery) {
  EXPECT_TRUE(entails(fixtures::family_bk(), fixtures::family_rules(), ground_atom("ancestor", {"john", "robert"})));
  EXPECT_FALSE(entails(fixtures::family_bk(), fixtures::family_rules(), ground_atom("ancestor", {"robert", "john"})));
  EXPECT_THROW(entails(fixtures::family_bk(), fixtures::family_rules(), Atom("ancestor", {Term::variable("X")})),
               std::invalid_argument);
}

TEST(ClassifyExamples, CountsAndMisclassifiedLists) {
  const std::vector<Atom> pos{ground_atom("ancestor", {"john", "mary"}), ground_atom("ancestor", {"john", "robert"})};
  const std::vector<Atom> neg{ground_atom("ancestor", {"mary", "john"}), ground_atom("ancestor", {"john", "susan"})};
  // non-recursive half of the definition only
  Classification c =
      classify_examples(fixtures::family_bk(), parse_program("ancestor(X,Y) :- parent(X,Y)."), pos, neg);
  EXPECT_EQ(c.counts, (ConfusionCounts{.tp = 1, .fp = 0, .fn = 1, .tn = 2}));
  EXPECT_EQ(c.misclassified_pos, std::vector<Atom>{ground_atom("ancestor", {"john", "robert"})});
  EXPECT_TRUE(c.misclassified_neg.empty());

  Classification full = classify_examples(fixtures::family_bk(), fixtures::family_rules(), pos, neg);
  EXPECT_EQ(full.counts, (ConfusionCounts{.tp = 2, .fp = 1, .fn = 0, .tn = 1}));
  EXPECT_EQ(full.misclassified_neg, std::vector<Atom>{ground_atom("ancestor", {"john", "susan"})});
}

TEST(ClassifyExamples, OverlapIsRejected) {
  const std::vector<Atom> both{ground_atom("p", {"a"})};
  EXPECT_THROW(classify_examples({}, {}, both, both), OverlappingExamples);
}

// Semi-naive evaluation agrees with naive iteration on random programs.
TEST(LeastModelProperty, MatchesNaiveOracle) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const oracle::Instance inst = oracle::random_instance(seed);
    const FactSet got = least_model(to_factset(inst.facts), inst.rules);
    ASSERT_EQ(as_set(got), oracle::naive_model(inst.facts, inst.rules))
        << "seed " << seed << "\n" << render_program(inst.rules);
    ASSERT_EQ(got.size(), as_set(got).size());
  }
}

TEST(LeastModelProperty, ContainsBkAndIsMonotoneInTheTheory) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const oracle::Instance inst = oracle::random_instance(seed);
    const FactSet bk = to_factset(inst.facts);
    const std::set<Atom> full = as_set(least_model(bk, inst.rules));
    for (const Atom& a : bk) ASSERT_TRUE(full.contains(a));
    Program fewer = inst.rules;
    if (!fewer.clauses.empty()) fewer.clauses.pop_back();
    const std::set<Atom> part = as_set(least_model(bk, fewer));
    ASSERT_TRUE(std::includes(full.begin(), full.end(), part.begin(), part.end())) << "seed " << seed;
  }
}

TEST(LeastModelProperty, IsAFixpoint) {
  for (std::uint64_t seed = 400; seed < 450; ++seed) {
    const oracle::Instance inst = oracle::random_instance(seed);
    const FactSet m = least_model(to_factset(inst.facts), inst.rules);
    // feeding the model back in derives nothing new
    EXPECT_EQ(as_set(least_model(m, inst.rules)), as_set(m));
  }
}

}  // namespace
}  // namespace ilpbench
