#include "dpllt/sim1.hpp"
#include "dpllt/sim2.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dpllt::testing {
namespace {

Formula L(int v) { return Formula::lit(lit(v)); }

LkSequent seq(std::initializer_list<int> ctx,
              std::initializer_list<std::initializer_list<int>> goal) {
  return LkSequent{lits(ctx), cnf(goal)};
}

LkNode open_instance(const LkSequent &s, LkRule r) {
  LkNode n{s, r, {}};
  for (const LkSequent &p : expected_premises(s, r))
    n.children.push_back(LkNode::leaf(p));
  return n;
}

PolaritySet pol(std::initializer_list<int> vs) {
  PolaritySet p;
  for (int v : vs)
    p = p.with(lit(v));
  return p;
}

TEST(Encode, FreshSpines) {
  ClauseEncoding e = encode_clause(clause({2, -1, 2}), {});
  EXPECT_EQ(e.formula, or_spine({lit(-1), lit(2)}));
  EXPECT_TRUE(e.garbage.empty());
  EXPECT_EQ(encode_clause(Clause{}, {}).formula, Formula::bottom());
  EXPECT_EQ(encode_clause(clause({3}), {}).formula, L(3));
}

TEST(PCorresponds, Examples) {
  Formula f = or_spine({lit(1), lit(2), lit(3)});
  EXPECT_TRUE(p_corresponds(f, clause({1, 2, 3}), {}));
  EXPECT_TRUE(p_corresponds(f, clause({1, 3}), pol({-2})));
  EXPECT_FALSE(p_corresponds(f, clause({1, 3}), {}));
  EXPECT_FALSE(p_corresponds(f, clause({1, 3}), pol({2})));
  EXPECT_FALSE(p_corresponds(f, clause({1, 4}), pol({-2, -3})));
  EXPECT_TRUE(p_corresponds(Formula::bottom(), Clause{}, {}));
  EXPECT_TRUE(p_corresponds(f, Clause{}, pol({-1, -2, -3})));
  EXPECT_FALSE(p_corresponds(Formula::and_p(L(1), L(2)), clause({1, 2}), {}));
}

TEST(PCorresponds, MonotoneInPolarity) {
  Rng rng(21);
  std::uniform_int_distribution<int> pick(1, 5);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Literal> spine;
    for (int k = pick(rng); k > 0; --k)
      spine.push_back(Literal(static_cast<Atom>(pick(rng)), pick(rng) % 2 == 0));
    Formula f = or_spine(spine);
    std::vector<Literal> kept;
    for (Literal l : spine)
      if (pick(rng) % 2)
        kept.push_back(l);
    Clause c(kept);
    PolaritySet p;
    for (Literal l : spine)
      if (pick(rng) % 2 && !p.contains(l))
        p = p.with(~l);
    if (!p_corresponds(f, c, p))
      continue;
    for (Atom a = 1; a <= 5; ++a) {
      Literal extra(a, pick(rng) % 2 == 0);
      if (p.contains(~extra))
        continue;
      EXPECT_TRUE(p_corresponds(f, c, p.with(extra))) << to_string(f);
    }
  }
}

TEST(Correspondence, InitialHolds) {
  EmptyTheory th;
  SeqCorrespondence c = initial_correspondence(seq({}, {{1, 2}, {-1}}));
  EXPECT_TRUE(correspondence_holds(c, th));
  EXPECT_EQ(c.target.gamma.size(), 2u);
  EXPECT_EQ(c.pairing.size(), 2u);

  SeqCorrespondence ctx = initial_correspondence(seq({1}, {{2}}));
  EXPECT_TRUE(ctx.target.gamma.contains(L(1)));
  EXPECT_TRUE(correspondence_holds(ctx, th));
}

TEST(Correspondence, Violations) {
  EmptyTheory th;
  SeqCorrespondence c = initial_correspondence(seq({}, {{1, 2}}));
  SeqCorrespondence short_pairing = c;
  short_pairing.pairing.clear();
  EXPECT_FALSE(correspondence_holds(short_pairing, th));

  SeqCorrespondence unentailed = c;
  unentailed.target.polarity = pol({-1});
  EXPECT_FALSE(correspondence_holds(unentailed, th));

  SeqCorrespondence busy = c;
  busy.target.delta.push_back(L(3));
  EXPECT_FALSE(correspondence_holds(busy, th));

  SeqCorrespondence wrong = c;
  wrong.pairing[0] = L(1);
  EXPECT_FALSE(correspondence_holds(wrong, th));
}

TEST(TranslateStep, SplitBecomesAnalyticCut) {
  EmptyTheory th;
  LkSequent s = seq({}, {{1, 2}});
  TranslationStep t =
      translate_step(open_instance(s, rule::Split{lit(1)}), initial_correspondence(s), th);
  ASSERT_TRUE(t.partial.rule.has_value());
  EXPECT_EQ(*t.partial.rule, LktRule(lkt::AnalyticCut{lit(-1)}));
  ASSERT_EQ(t.premises.size(), 2u);
  for (const auto &p : t.premises) {
    ASSERT_TRUE(p.has_value());
    EXPECT_TRUE(correspondence_holds(*p, th));
  }
  EXPECT_EQ(t.leaf_premise.size(), 2u);
  EXPECT_EQ(lkt_tree_size(t.partial), 1u);
}

TEST(TranslateStep, ResolvePolarizes) {
  EmptyTheory th;
  LkSequent s = seq({1}, {{-1, 2}});
  TranslationStep t = translate_step(open_instance(s, rule::Resolve{lit(-1), 0}),
                                     initial_correspondence(s), th);
  EXPECT_EQ(*t.partial.rule, LktRule(lkt::Polarize{lit(1), lkt::Zone::Atom}));
  ASSERT_TRUE(t.premises[0].has_value());
  EXPECT_TRUE(correspondence_holds(*t.premises[0], th));
  EXPECT_TRUE(t.premises[0]->target.polarity.contains(lit(1)));
  // The spine still holds -1, now garbage.
  EXPECT_EQ(t.premises[0]->pairing[0], or_spine({lit(-1), lit(2)}));
}

TEST(TranslateStep, ResolveOnPolarizedAtomEmitsNothing) {
  EmptyTheory th;
  LkSequent s = seq({1}, {{-1, 2}, {-1, 3}});
  TranslationStep first = translate_step(
      open_instance(s, rule::Resolve{lit(-1), 0}), initial_correspondence(s), th);
  const SeqCorrespondence &mid = *first.premises[0];
  TranslationStep second = translate_step(
      open_instance(mid.source, rule::Resolve{lit(-1), 1}), mid, th);
  EXPECT_TRUE(second.partial.open());
  EXPECT_EQ(lkt_tree_size(second.partial), 0u);
  ASSERT_TRUE(second.premises[0].has_value());
  EXPECT_TRUE(correspondence_holds(*second.premises[0], th));
}

TEST(TranslateStep, EmptyClosesBranch) {
  EmptyTheory th;
  LkSequent s = seq({}, {{}});
  TranslationStep t = translate_step(LkNode{s, rule::Empty{}, {}},
                                     initial_correspondence(s), th);
  EXPECT_TRUE(t.premises.empty());
  EXPECT_TRUE(lkt_is_complete(t.partial));
  EXPECT_TRUE(check_lkt_tree(t.partial, th, true));
  // Decide on Top, then the unit rule.
  EXPECT_EQ(lkt_tree_size(t.partial), 2u);
}

TEST(TranslateStep, RejectsDashedAndMismatchedInput) {
  EmptyTheory th;
  LkSequent s = seq({}, {{1}, {2}});
  EXPECT_THROW(translate_step(open_instance(s, rule::Weak1{0}),
                              initial_correspondence(s), th),
               std::invalid_argument);
  EXPECT_THROW(translate_step(open_instance(s, rule::Split{lit(1)}),
                              initial_correspondence(seq({}, {{1}})), th),
               CorrespondenceViolation);
}

LkNode refutation_of_pair() {
  // |- -a, a
  LkSequent root = seq({}, {{-1}, {1}});
  LkNode tree = open_instance(root, rule::Assert{lit(-1)});
  LkNode &c = tree.children[0];
  c = open_instance(c.sequent, rule::Resolve{lit(1), 1});
  c.children[0].rule = rule::Empty{};
  return tree;
}

TEST(TranslateProof, ComplementaryUnits) {
  EmptyTheory th;
  LkNode tree = refutation_of_pair();
  ASSERT_TRUE(check_tree(tree, th, {.require_complete = true}));
  LktTranslation t = translate_proof(tree, th);
  EXPECT_TRUE(check_lkt_tree(t.proof, th, true));
  EXPECT_EQ(t.proof.sequent, initial_correspondence(tree.sequent).target);
  ASSERT_EQ(t.log.size(), 3u);
  for (const TranslationRecord &r : t.log)
    EXPECT_TRUE(r.within_bound()) << r.rule;
}

TEST(TranslateProof, SingleEmpty) {
  EmptyTheory th;
  LkNode tree{seq({}, {{}}), rule::Empty{}, {}};
  LktTranslation t = translate_proof(tree, th);
  EXPECT_TRUE(check_lkt_tree(t.proof, th, true));
  EXPECT_EQ(t.log.size(), 1u);
}

TEST(TranslateProof, ProofWithOneCut) {
  EmptyTheory th;
  // |- a | b, -a | b, -b with a cut on b.
  ClauseSet phi = cnf({{1, 2}, {-1, 2}, {-2}});
  SimSession s = init_session(phi, th);
  extend(s, step::TLearn{clause({2})});
  for (const DpllStep &st : run(s.state.clauses, th, 1000).trace)
    extend(s, st);
  ASSERT_TRUE(is_complete(s.tree));
  ASSERT_TRUE(contains_cut(s.tree));
  LktTranslation t = translate_proof(s.tree, th);
  EXPECT_TRUE(check_lkt_tree(t.proof, th, true));
  std::size_t gcuts = 0;
  std::vector<const LktNode *> stack{&t.proof};
  while (!stack.empty()) {
    const LktNode *n = stack.back();
    stack.pop_back();
    if (n->rule && std::holds_alternative<lkt::GeneralCut>(*n->rule))
      ++gcuts;
    for (const LktNode &c : n->children)
      stack.push_back(&c);
  }
  EXPECT_EQ(gcuts, 1u);
}

TEST(TranslateProof, AssertWithGarbageOutgrowsFormulaCount) {
  // a|b|c|d, -a, -b, -c, -d: the last Assert focuses on a spine carrying
  // three garbage literals and emits 2*4+2 nodes for a sequent of 5
  // formulae. The symbol count still bounds it.
  EmptyTheory th;
  ClauseSet phi = cnf({{1, 2, 3, 4}, {-1}, {-2}, {-3}, {-4}});
  LkCertificate cert = certify_unsat(phi, run(phi, th, 1000).trace, th);
  LktTranslation t = translate_proof(cert.tree, th);
  EXPECT_TRUE(check_lkt_tree(t.proof, th, true));
  std::size_t worst = 0;
  for (const TranslationRecord &r : t.log) {
    EXPECT_LE(r.emitted, r.symbol_count + 4) << r.rule;
    if (!r.within_bound())
      worst = std::max(worst, r.emitted - r.bound());
  }
  EXPECT_EQ(worst, 1u);
}

TEST(TranslateProof, ScriptedTracesWithCuts) {
  Rng rng(15);
  int done = 0;
  for (int attempt = 0; attempt < 400 && done < 15; ++attempt) {
    std::optional<ScriptedTrace> st = scripted_advanced_trace(rng, 5, 2000);
    if (!st)
      continue;
    EqualityTheory th(st->problem.table);
    LkCertificate cert = certify_unsat(st->problem.clauses, st->trace, th);
    LktTranslation t = translate_proof(cert.tree, th);
    ASSERT_TRUE(check_lkt_tree(t.proof, th, true, true))
        << to_string(st->problem.clauses);
    ++done;
  }
  EXPECT_EQ(done, 15);
}

TEST(TranslateProof, RejectsIncompleteTrees) {
  EmptyTheory th;
  EXPECT_THROW(translate_proof(LkNode::leaf(seq({}, {{1}})), th),
               std::invalid_argument);
}

TEST(TranslateProof, RandomRefutations) {
  Rng rng(3);
  EmptyTheory th;
  int done = 0;
  for (int i = 0; i < 150; ++i) {
    RandomCnf c = random_cnf(rng, 6, 20, 3);
    RunResult r = run(c.clauses, th, 100000);
    if (r.outcome != Outcome::Unsat)
      continue;
    LkCertificate cert = certify_unsat(c.clauses, r.trace, th);
    LktTranslation t = translate_proof(cert.tree, th);
    ASSERT_TRUE(check_lkt_tree(t.proof, th, true)) << to_string(c.clauses);
    ++done;
  }
  EXPECT_GT(done, 20);
}

} // namespace
} // namespace dpllt::testing
