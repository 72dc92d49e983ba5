#include "dpllt/lkdpll.hpp"
#include "dpllt/sim1.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dpllt::testing {
namespace {

LkSequent seq(std::initializer_list<int> ctx,
              std::initializer_list<std::initializer_list<int>> goal) {
  return LkSequent{lits(ctx), cnf(goal)};
}

/// Rule instance whose children are the expected premises, left open.
LkNode open_instance(const LkSequent &s, LkRule r) {
  LkNode n{s, r, {}};
  for (const LkSequent &p : expected_premises(s, r))
    n.children.push_back(LkNode::leaf(p));
  return n;
}

CheckResult check_one(const LkSequent &s, const LkRule &r, const Theory &th) {
  return check_rule_instance(s, r, expected_premises(s, r), th);
}

TEST(RuleInstance, SplitNeedsAtomInGoal) {
  EmptyTheory th;
  EXPECT_TRUE(check_one(seq({}, {{1, 2}}), rule::Split{lit(1)}, th));
  EXPECT_FALSE(check_one(seq({}, {{1, 2}}), rule::Split{lit(3)}, th));
  // Both extensions must stay consistent.
  EXPECT_FALSE(check_one(seq({1}, {{1, 2}}), rule::Split{lit(1)}, th));
}

TEST(RuleInstance, EmptyNeedsEmptyClause) {
  EmptyTheory th;
  EXPECT_TRUE(check_rule_instance(seq({}, {{1}, {}}), rule::Empty{}, {}, th));
  EXPECT_FALSE(check_rule_instance(seq({}, {{1}}), rule::Empty{}, {}, th));
}

TEST(RuleInstance, AssertResolveSubsume) {
  EmptyTheory th;
  EXPECT_TRUE(check_one(seq({}, {{1}, {-1, 2}}), rule::Assert{lit(1)}, th));
  EXPECT_FALSE(check_one(seq({-1}, {{1}}), rule::Assert{lit(1)}, th));
  EXPECT_THROW(expected_premises(seq({}, {{1, 2}}), rule::Assert{lit(1)}),
               std::invalid_argument);

  EXPECT_TRUE(check_one(seq({1}, {{-1, 2}}), rule::Resolve{lit(-1), 0}, th));
  EXPECT_FALSE(check_one(seq({}, {{-1, 2}}), rule::Resolve{lit(-1), 0}, th));
  EXPECT_EQ(expected_premises(seq({1}, {{-1, 2}}), rule::Resolve{lit(-1), 0})[0],
            seq({1}, {{2}}));

  EXPECT_TRUE(check_one(seq({2}, {{-1, 2}, {3}}), rule::Subsume{lit(2), 0}, th));
  EXPECT_FALSE(check_one(seq({}, {{-1, 2}}), rule::Subsume{lit(2), 0}, th));
}

TEST(RuleInstance, TheoryAwareResolve) {
  TheoryAtomTable t(3);
  t.declare(1, "x", "y", true);
  t.declare(2, "y", "z", true);
  t.declare(3, "x", "z", true);
  EqualityTheory th(t);
  EXPECT_TRUE(check_one(seq({1, 2}, {{-3}}), rule::Resolve{lit(-3), 0}, th));
  EXPECT_FALSE(check_one(seq({1}, {{-3}}), rule::Resolve{lit(-3), 0}, th));
}

TEST(RuleInstance, DashedRules) {
  EmptyTheory th;
  EXPECT_TRUE(check_one(seq({}, {{1}, {2}}), rule::Weak1{1}, th));
  EXPECT_TRUE(check_one(seq({1}, {{1, 2}}), rule::Weak2{LiteralSet{}}, th));
  // The premise context would entail 1, which the conclusion does not.
  EXPECT_FALSE(check_one(seq({}, {{1, 2}}), rule::Weak2{lits({1})}, th));
  EXPECT_TRUE(check_one(seq({1}, {{2}}), rule::InvResolve{lit(-1), 0}, th));
  EXPECT_FALSE(check_one(seq({}, {{2}}), rule::InvResolve{lit(-1), 0}, th));
}

TEST(RuleInstance, CutPremises) {
  EmptyTheory th;
  LkSequent s = seq({}, {{1, 2}});
  std::vector<LkSequent> p = expected_premises(s, rule::Cut{{lit(1), lit(-2)}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], seq({}, {{1, 2}, {1}, {-2}}));
  EXPECT_EQ(p[1], seq({}, {{1, 2}, {-1, 2}}));
  EXPECT_TRUE(check_one(s, rule::Cut{{lit(1)}}, th));
}

TEST(RuleInstance, WrongPremisesRejected) {
  EmptyTheory th;
  LkSequent s = seq({}, {{1, 2}});
  EXPECT_FALSE(check_rule_instance(s, rule::Split{lit(1)},
                                   {seq({1}, {{1, 2}}), seq({-1}, {{1, 2}})},
                                   th));
  EXPECT_FALSE(check_rule_instance(s, rule::Split{lit(1)}, {seq({-1}, {{1, 2}})},
                                   th));
}

LkNode small_refutation() {
  // |- a, -a
  LkSequent root = seq({}, {{1}, {-1}});
  LkNode tree = open_instance(root, rule::Assert{lit(1)});
  LkNode &c = tree.children[0];
  c = open_instance(c.sequent, rule::Resolve{lit(-1), 1});
  c.children[0].rule = rule::Empty{};
  return tree;
}

TEST(CheckTree, CompleteAndOpen) {
  EmptyTheory th;
  LkNode tree = small_refutation();
  EXPECT_TRUE(check_tree(tree, th, {.require_complete = true}));
  EXPECT_TRUE(check_tree(tree, th, {.base_only = true, .parallel = true}));
  EXPECT_TRUE(is_complete(tree));
  EXPECT_EQ(tree_size(tree), 3u);
  EXPECT_EQ(node_count(tree), 3u);

  LkNode open = tree;
  open.children[0].children[0].rule.reset();
  EXPECT_TRUE(check_tree(open, th));
  EXPECT_FALSE(check_tree(open, th, {.require_complete = true}));
  EXPECT_EQ(open_leaves(open).size(), 1u);
  EXPECT_EQ(tree_size(open), 2u);

  LkNode bad = tree;
  bad.children[0].children[0].sequent.context = lits({1, 2});
  EXPECT_FALSE(check_tree(bad, th));
}

TEST(TreeSize, DashedAndCut) {
  EmptyTheory th;
  LkSequent s = seq({1}, {{}});
  LkNode weak = open_instance(s, rule::Weak2{LiteralSet{}});
  weak.children[0].rule = rule::Empty{};
  EXPECT_EQ(tree_size(weak), 1u);
  EXPECT_TRUE(check_tree(weak, th));

  LkNode cut = open_instance(seq({}, {{}}), rule::Cut{{lit(1)}});
  cut.children[0].rule = rule::Empty{};
  cut.children[1].rule = rule::Empty{};
  EXPECT_EQ(tree_size(cut), 2u);
  EXPECT_TRUE(contains_cut(cut));
  EXPECT_FALSE(check_tree(cut, th, {.base_only = true}));
}

TEST(Lgt, Sizes) {
  EmptyTheory th;
  LkNode two = build_lgt(lits({-1, -2}), clause({1, 2}), cnf({{3}}), th);
  EXPECT_EQ(tree_size(two), 3u);
  EXPECT_TRUE(check_tree(two, th, {.require_complete = true}));
  EXPECT_EQ(tree_size(build_lgt(LiteralSet{}, Clause{}, {}, th)), 1u);
  EXPECT_EQ(tree_size(build_lgt(lits({-1}), clause({1}), {}, th)), 2u);
  EXPECT_THROW(build_lgt(LiteralSet{}, clause({1}), {}, th),
               std::invalid_argument);
}

TEST(Eliminate, Weak1OverEmpty) {
  EmptyTheory th;
  LkNode tree = open_instance(seq({}, {{}, {1}}), rule::Weak1{1});
  tree.children[0].rule = rule::Empty{};
  LkNode out = eliminate_admissible(tree, th);
  EXPECT_EQ(out.sequent, tree.sequent);
  EXPECT_TRUE(std::holds_alternative<rule::Empty>(*out.rule));
  EXPECT_TRUE(check_tree(out, th, {.base_only = true, .require_complete = true}));
}

TEST(Eliminate, InvResolveOverResolve) {
  EmptyTheory th;
  // {a} |- [b] via InvResolve(-a) then Resolve(-a): the detour disappears.
  LkSequent s = seq({1}, {{2}, {}});
  LkNode tree = open_instance(s, rule::InvResolve{lit(-1), 0});
  LkNode &mid = tree.children[0];
  mid = open_instance(mid.sequent, rule::Resolve{lit(-1), 0});
  mid.children[0].rule = rule::Empty{};
  ASSERT_TRUE(check_tree(tree, th, {.require_complete = true}));
  LkNode out = eliminate_admissible(tree, th);
  EXPECT_EQ(out.sequent, s);
  EXPECT_LE(tree_size(out), tree_size(tree));
  EXPECT_TRUE(check_tree(out, th, {.base_only = true, .require_complete = true}));
}

TEST(Eliminate, RejectsCutsAndOpenLeaves) {
  EmptyTheory th;
  LkNode cut = open_instance(seq({}, {{}}), rule::Cut{{lit(1)}});
  cut.children[0].rule = rule::Empty{};
  cut.children[1].rule = rule::Empty{};
  EXPECT_THROW(eliminate_admissible(cut, th), EliminationFailed);
  EXPECT_NO_THROW(eliminate_admissible(cut, th, CutPolicy::PermuteThrough));
  EXPECT_THROW(eliminate_admissible(LkNode::leaf(seq({}, {{1}})), th),
               EliminationFailed);
}

TEST(Eliminate, SimulatedProofsBecomeBaseOnly) {
  Rng rng(31);
  EmptyTheory th;
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    RandomCnf c = random_cnf(rng, 6, 20, 3);
    RunResult r = run(c.clauses, th, 100000);
    if (r.outcome != Outcome::Unsat)
      continue;
    LkCertificate cert = certify_unsat(c.clauses, r.trace, th);
    LkNode out = eliminate_admissible(cert.tree, th);
    ASSERT_TRUE(check_tree(out, th, {.base_only = true, .require_complete = true}))
        << to_string(c.clauses);
    EXPECT_EQ(out.sequent, cert.tree.sequent);
    EXPECT_LE(tree_size(out), tree_size(cert.tree));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(RuleNames, Classification) {
  EXPECT_EQ(rule_name(rule::InvResolve{}), "InvResolve");
  EXPECT_EQ(arity(rule::Cut{}), 2u);
  EXPECT_EQ(arity(rule::Empty{}), 0u);
  EXPECT_TRUE(is_dashed(rule::Weak2{}));
  EXPECT_FALSE(is_base(rule::Cut{}));
  EXPECT_TRUE(is_base(rule::Subsume{}));
}

} // namespace
} // namespace dpllt::testing
