#include "dpllt/sim1.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dpllt::testing {
namespace {

TEST(Session, InitialLeafIsWholeProblem) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{1, 2}}), th);
  EXPECT_TRUE(s.tree.open());
  EXPECT_EQ(s.tree.sequent, (LkSequent{LiteralSet{}, cnf({{1, 2}})}));
  EXPECT_TRUE(correspondence_holds(s.tree, s.state));
}

TEST(Correspondence, Examples) {
  ClauseSet phi = cnf({{1, 2}});
  DpllState state{false, Trail{{lit(1), true}}, phi};
  LkNode tree{LkSequent{LiteralSet{}, phi}, rule::Split{lit(1)},
              {LkNode::leaf({lits({-1}), phi}), LkNode::leaf({lits({1}), phi})}};
  EXPECT_TRUE(correspondence_holds(tree, state));
  EXPECT_FALSE(correspondence_holds(LkNode::leaf({lits({2}), phi}), state));
  EXPECT_FALSE(correspondence_holds(LkNode::leaf({LiteralSet{}, cnf({{1}})}),
                                    DpllState::initial(phi)));
  DpllState unsat;
  unsat.unsat = true;
  EXPECT_FALSE(correspondence_holds(tree, unsat));
}

TEST(ExtendBasic, DecideSplits) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{1, 2}}), th);
  extend_basic(s, step::Decide{lit(1)});
  ASSERT_TRUE(s.tree.rule.has_value());
  EXPECT_TRUE(std::holds_alternative<rule::Split>(*s.tree.rule));
  EXPECT_EQ(open_leaves(s.tree).size(), 2u);
  ASSERT_EQ(s.log.size(), 1u);
  EXPECT_EQ(s.log[0].max_leaf_size, 1u);
  EXPECT_EQ(s.log[0].bound, 3u);
}

TEST(ExtendBasic, UnitPropagateUsesAssertChain) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{1}, {-1, 2}}), th);
  extend_basic(s, step::UnitPropagate{0, lit(1)});
  EXPECT_TRUE(std::holds_alternative<rule::Assert>(*s.tree.rule));
  extend_basic(s, step::UnitPropagate{1, lit(2)});
  EXPECT_EQ(open_leaves(s.tree).size(), 1u);
  EXPECT_EQ(open_leaves(s.tree)[0]->sequent.context, lits({1, 2}));
  EXPECT_TRUE(check_tree(s.tree, th));
  // Resolve, Assert: the InvResolve is not counted.
  EXPECT_EQ(s.log[1].max_leaf_size, 2u);
}

TEST(ExtendBasic, FailClosesTree) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{-1}, {1}}), th);
  extend_basic(s, step::UnitPropagate{0, lit(-1)});
  extend_basic(s, step::Fail{1});
  EXPECT_TRUE(s.state.unsat);
  EXPECT_TRUE(is_complete(s.tree));
  EXPECT_TRUE(check_tree(s.tree, th, {.require_complete = true}));
  EXPECT_EQ(s.log[1].max_leaf_size, 2u);
  EXPECT_EQ(s.log[1].strict_bound, 2u);
}

TEST(ExtendBasic, BacktrackClosesOnlyCurrentBranch) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{-1, 2}, {-1, -2}}), th);
  extend_basic(s, step::Decide{lit(1)});
  extend_basic(s, step::UnitPropagate{0, lit(2)});
  extend_basic(s, step::Backtrack{1});
  EXPECT_EQ(s.state.trail, (Trail{{lit(-1), false}}));
  std::vector<const LkNode *> open = open_leaves(s.tree);
  ASSERT_EQ(open.size(), 1u);
  EXPECT_EQ(open[0]->sequent.context, lits({-1}));
}

TEST(ExtendBasic, TheoryPropagateWeakens) {
  TheoryAtomTable t(3);
  t.declare(1, "x", "y", true);
  t.declare(2, "y", "z", true);
  t.declare(3, "x", "z", true);
  EqualityTheory th(t);
  SimSession s = init_session(cnf({{1}, {2}, {-3}}), th);
  extend_basic(s, step::UnitPropagate{0, lit(1)});
  extend_basic(s, step::UnitPropagate{1, lit(2)});
  extend_basic(s, step::TheoryPropagate{lit(3)});
  EXPECT_EQ(s.log.back().max_leaf_size, 0u);
  extend_basic(s, step::Fail{2});
  EXPECT_TRUE(check_tree(s.tree, th, {.require_complete = true}));
}

TEST(ExtendBasic, RejectsAdvancedSteps) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{1}}), th);
  EXPECT_THROW(extend_basic(s, step::Restart{}), std::invalid_argument);
  EXPECT_THROW(extend_advanced(s, step::Decide{lit(1)}), std::invalid_argument);
  EXPECT_THROW(extend_basic(s, step::Fail{0}), SideConditionViolated);
}

TEST(ExtendAdvanced, RestartWeakensNonRootLeaves) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{1, 2}, {-1, 2}}), th);
  extend(s, step::Decide{lit(1)});
  extend(s, step::Restart{});
  EXPECT_TRUE(s.state.trail.empty());
  for (const LkNode *leaf : open_leaves(s.tree))
    EXPECT_TRUE(leaf->sequent.context.empty());
  EXPECT_TRUE(check_tree(s.tree, th));
}

TEST(ExtendAdvanced, LearnAndForget) {
  EmptyTheory th;
  SimSession s = init_session(cnf({{-1, 2}, {-2, 3}}), th);
  extend(s, step::TLearn{clause({-1, 3})});
  EXPECT_TRUE(contains_cut(s.tree));
  EXPECT_TRUE(check_tree(s.tree, th));
  EXPECT_LE(s.log.back().max_leaf_size, s.log.back().bound);
  extend(s, step::TForget{2});
  EXPECT_TRUE(check_tree(s.tree, th));
  EXPECT_EQ(open_leaves(s.tree)[0]->sequent.goal, cnf({{-1, 2}, {-2, 3}}));
}

TEST(ExtendAdvanced, Backjump) {
  EmptyTheory th;
  ClauseSet phi = cnf({{-1, 2}, {3, 4}, {-2, 5}});
  SimSession s = init_session(phi, th);
  extend(s, step::Decide{lit(1)});
  extend(s, step::Decide{lit(3)});
  extend(s, step::Decide{lit(-2)});
  extend(s, step::TBackjump{0, 1, clause({-1}), lit(2)});
  EXPECT_EQ(s.state.trail, (Trail{{lit(1), true}, {lit(2), false}}));
  EXPECT_TRUE(check_tree(s.tree, th));
  EXPECT_TRUE(correspondence_holds(s.tree, s.state));
  EXPECT_LE(s.log.back().max_leaf_size, s.log.back().bound);
}

TEST(Discharge, Examples) {
  EmptyTheory th;
  LkNode pair = discharge_theory_lemma(cnf({{1}, {-1}}), th, 100);
  EXPECT_TRUE(check_tree(pair, th, {.require_complete = true}));
  LkNode bottom = discharge_theory_lemma(cnf({{}}), th, 100);
  EXPECT_TRUE(std::holds_alternative<rule::Empty>(*bottom.rule));
  EXPECT_THROW(discharge_theory_lemma(cnf({{1}}), th, 100), LemmaDischargeFailed);
}

TEST(CertifyUnsat, RejectsNonRefutations) {
  EmptyTheory th;
  EXPECT_THROW(certify_unsat(cnf({{1}}), {step::UnitPropagate{0, lit(1)}}, th),
               std::invalid_argument);
  try {
    certify_unsat(cnf({{1}}), {step::Decide{lit(2)}}, th);
    FAIL();
  } catch (const SideConditionViolated &e) {
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(CertifyUnsat, BasicRunsRespectStepBound) {
  Rng rng(77);
  EmptyTheory th;
  int certified = 0;
  for (int i = 0; i < 200; ++i) {
    RandomCnf c = random_cnf(rng, 7, 25, 3);
    RunResult r = run(c.clauses, th, 100000);
    if (r.outcome != Outcome::Unsat)
      continue;
    LkCertificate cert = certify_unsat(c.clauses, r.trace, th);
    ASSERT_TRUE(check_tree(cert.tree, th, {.require_complete = true}));
    for (const StepRecord &rec : cert.log)
      ASSERT_TRUE(rec.within_bound()) << rec.kind << " " << rec.max_leaf_size;
    ++certified;
  }
  EXPECT_GT(certified, 30);
}

TEST(CertifyUnsat, ScriptedAdvancedTraces) {
  Rng rng(4);
  int done = 0;
  for (int attempt = 0; attempt < 200 && done < 5; ++attempt) {
    std::optional<ScriptedTrace> st = scripted_advanced_trace(rng, 4, 2000);
    if (!st)
      continue;
    EqualityTheory th(st->problem.table);
    LkCertificate cert = certify_unsat(st->problem.clauses, st->trace, th);
    ASSERT_TRUE(check_tree(cert.tree, th, {.require_complete = true}));
    for (const StepRecord &rec : cert.log)
      ASSERT_TRUE(rec.within_bound()) << rec.kind;
    ++done;
  }
  EXPECT_EQ(done, 5);
}

} // namespace
} // namespace dpllt::testing
