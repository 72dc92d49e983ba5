//===- sim2.cpp - Translating LKDPLL proofs into LK(T)p -----------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/sim2.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpllt {

ClauseEncoding encode_clause(const Clause &clause, const PolaritySet &) {
  std::vector<Literal> lits = clause.sorted();
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return {clause, or_spine(lits), LiteralSet{}};
}

bool p_corresponds(const Formula &encoded, const Clause &clause,
                   const PolaritySet &polarity) {
  std::vector<Literal> spine;
  try {
    spine = spine_literals(encoded);
  } catch (const std::invalid_argument &) {
    return false;
  }
  LiteralSet have(spine);
  for (Literal l : clause)
    if (!have.contains(l))
      return false;
  for (Literal l : have)
    if (!clause.contains(l) && !polarity.contains(~l))
      return false;
  return true;
}

namespace {

FormulaSet expected_gamma(const SeqCorrespondence &corr) {
  std::vector<Formula> all;
  for (Literal l : corr.source.context)
    all.push_back(Formula::lit(l));
  all.insert(all.end(), corr.pairing.begin(), corr.pairing.end());
  all.insert(all.end(), corr.extras.begin(), corr.extras.end());
  return FormulaSet(std::move(all));
}

std::size_t symbols(const Formula &f) {
  switch (f.kind()) {
  case FormulaKind::Lit:
  case FormulaKind::Top:
  case FormulaKind::Bottom:
    return 1;
  default:
    return 1 + symbols(f.lhs()) + symbols(f.rhs());
  }
}

} // namespace

CheckResult correspondence_holds(const SeqCorrespondence &corr,
                                 const Theory &theory) {
  const LktSequent &t = corr.target;
  if (t.focused || !t.delta.empty() || !t.store.empty())
    return CheckResult::fail("target is not a quiescent unfocused sequent");
  if (corr.pairing.size() != corr.source.goal.count())
    return CheckResult::fail("pairing does not cover the goal");
  if (!(t.gamma == expected_gamma(corr)))
    return CheckResult::fail("Gamma is not context + pairing + extras");
  for (std::size_t i = 0; i < corr.pairing.size(); ++i)
    if (!p_corresponds(corr.pairing[i], corr.source.goal[i], t.polarity))
      return CheckResult::fail(to_string(corr.pairing[i]) +
                               " does not correspond to " +
                               to_string(corr.source.goal[i]));
  for (Literal l : t.polarity.literals())
    if (!tc_entails(theory, corr.source.context, l))
      return CheckResult::fail("context does not entail positive literal " +
                               to_string(l));
  for (const Formula &extra : corr.extras) {
    std::vector<Literal> lits;
    try {
      lits = spine_literals(extra);
    } catch (const std::invalid_argument &) {
      return CheckResult::fail("extra formula is not a spine");
    }
    if (std::none_of(lits.begin(), lits.end(), [&](Literal l) {
          return tc_entails(theory, corr.source.context, l);
        }))
      return CheckResult::fail("extra formula " + to_string(extra) +
                               " has no entailed literal");
  }
  return CheckResult::pass();
}

SeqCorrespondence initial_correspondence(const LkSequent &sequent) {
  SeqCorrespondence corr;
  corr.source = sequent;
  PolaritySet empty;
  for (const Clause &c : sequent.goal)
    corr.pairing.push_back(encode_clause(c, empty).formula);
  corr.target = LktSequent::unfocused(expected_gamma(corr), empty);
  return corr;
}

namespace {

LktNode make(LktSequent s, LktRule r, std::vector<LktNode> children = {}) {
  return LktNode{std::move(s), std::move(r), std::move(children)};
}

/// Focus phase on a conjunction of negated spine literals. Every conjunct
/// other than `asserted` is closed by the theory; the asserted one is
/// released and stored, leaving an open leaf.
LktNode focus_phase(const LktSequent &base, const Formula &focus,
                    std::optional<Literal> asserted) {
  LktSequent s = LktSequent::with_focus(base.gamma, focus, base.polarity);
  if (focus.kind() == FormulaKind::AndP)
    return make(s, lkt::AndP{},
                {focus_phase(base, focus.lhs(), asserted),
                 focus_phase(base, focus.rhs(), asserted)});
  if (focus.kind() == FormulaKind::Top)
    return make(s, lkt::TopP{});
  Literal neg = focus.literal();
  if (asserted && neg == ~*asserted) {
    LktSequent released =
        LktSequent::unfocused(base.gamma, base.polarity, {focus});
    LktSequent stored =
        LktSequent::unfocused(base.gamma.with(Formula::lit(*asserted)),
                              base.polarity);
    return make(s, lkt::Release{},
                {make(released, lkt::Store{}, {LktNode::leaf(stored)})});
  }
  return make(s, lkt::InitTheory{});
}

std::size_t first_clause(const ClauseSet &goal, const Clause &wanted) {
  for (std::size_t i = 0; i < goal.count(); ++i)
    if (goal[i] == wanted)
      return i;
  throw CorrespondenceViolation("goal has no clause " + to_string(wanted));
}

std::vector<Literal> dedup(const std::vector<Literal> &lits) {
  std::vector<Literal> out;
  for (Literal l : lits)
    if (std::find(out.begin(), out.end(), l) == out.end())
      out.push_back(l);
  return out;
}

} // namespace

TranslationStep translate_step(const LkNode &node,
                               const SeqCorrespondence &corr,
                               const Theory &theory) {
  if (node.open())
    throw std::invalid_argument("cannot translate an open leaf");
  if (!node.sequent.same_positions(corr.source))
    throw CorrespondenceViolation("correspondence is for " +
                                  to_string(corr.source) + ", node is " +
                                  to_string(node.sequent));
  const LktSequent &g = corr.target;
  const LkRule &r = *node.rule;
  TranslationStep out;

  auto child_corr = [&](std::size_t i) {
    SeqCorrespondence c = corr;
    c.source = node.children.at(i).sequent;
    return c;
  };
  auto finish_leaves = [&] {
    std::vector<LktNode *> stack{&out.partial};
    std::size_t open = 0;
    while (!stack.empty()) {
      LktNode *n = stack.back();
      stack.pop_back();
      if (n->open())
        ++open;
      for (auto it = n->children.rbegin(); it != n->children.rend(); ++it)
        stack.push_back(&*it);
    }
    return open;
  };

  if (auto *split = std::get_if<rule::Split>(&r)) {
    LktRule cut = lkt::AnalyticCut{~split->lit};
    auto premises = expected_lkt_premises(g, cut);
    out.partial = make(g, cut,
                       {LktNode::leaf(premises[0]), LktNode::leaf(premises[1])});
    for (std::size_t i = 0; i < 2; ++i) {
      SeqCorrespondence c = child_corr(i);
      c.target = premises[i];
      out.premises.push_back(std::move(c));
      out.leaf_premise.push_back(i);
    }
  } else if (auto *as = std::get_if<rule::Assert>(&r)) {
    Literal l = as->lit;
    std::size_t k = first_clause(corr.source.goal, Clause{l});
    const Formula &enc = corr.pairing[k];
    LktRule pol = lkt::Polarize{l, lkt::Zone::Atom};
    LktSequent polarized = expected_lkt_premises(g, pol).front();
    SeqCorrespondence c = child_corr(0);
    c.target = LktSequent::unfocused(g.gamma.with(Formula::lit(l)),
                                     polarized.polarity);
    if (enc.is_literal()) {
      out.partial = make(g, pol, {LktNode::leaf(polarized)});
      out.leaf_premise.push_back(0);
    } else {
      Formula dual = negate_formula(enc);
      LktNode phase = focus_phase(polarized, dual, l);
      out.partial =
          make(g, pol, {make(polarized, lkt::Decide{dual}, {std::move(phase)})});
      std::size_t leaves = finish_leaves();
      out.leaf_premise.assign(leaves, 0);
    }
    out.premises.push_back(std::move(c));
  } else if (std::holds_alternative<rule::Empty>(r)) {
    std::size_t k = first_clause(corr.source.goal, Clause{});
    Formula dual = negate_formula(corr.pairing[k]);
    out.partial = make(g, lkt::Decide{dual},
                       {focus_phase(g, dual, std::nullopt)});
  } else if (auto *res = std::get_if<rule::Resolve>(&r)) {
    Literal l = res->lit;
    if (g.polarity.contains(~l)) {
      out.partial = LktNode::leaf(g);
      SeqCorrespondence c = child_corr(0);
      out.premises.push_back(std::move(c));
      out.leaf_premise.push_back(0);
    } else if (g.polarity.contains(l)) {
      out.partial = make(g, lkt::TheoryClose{});
      out.premises.push_back(std::nullopt);
    } else {
      LktRule pol = lkt::Polarize{~l, lkt::Zone::Atom};
      LktSequent p = expected_lkt_premises(g, pol).front();
      out.partial = make(g, pol, {LktNode::leaf(p)});
      SeqCorrespondence c = child_corr(0);
      c.target = p;
      out.premises.push_back(std::move(c));
      out.leaf_premise.push_back(0);
    }
  } else if (auto *sub = std::get_if<rule::Subsume>(&r)) {
    out.partial = LktNode::leaf(g);
    SeqCorrespondence c = child_corr(0);
    c.extras.push_back(c.pairing[sub->clause]);
    c.pairing.erase(c.pairing.begin() +
                    static_cast<std::ptrdiff_t>(sub->clause));
    out.premises.push_back(std::move(c));
    out.leaf_premise.push_back(0);
  } else if (auto *cut = std::get_if<rule::Cut>(&r)) {
    std::vector<Literal> lits = dedup(cut->lits);
    LktRule gcut = lkt::GeneralCut{lits};
    auto premises = expected_lkt_premises(g, gcut);
    out.partial = make(g, gcut,
                       {LktNode::leaf(premises[0]), LktNode::leaf(premises[1])});
    SeqCorrespondence left = child_corr(0), right = child_corr(1);
    left.target = premises[0];
    for (Literal l : cut->lits)
      left.pairing.push_back(Formula::lit(l));
    std::vector<Literal> negs;
    for (Literal l : lits)
      negs.push_back(~l);
    right.target = premises[1];
    right.pairing.push_back(or_spine(negs));
    out.premises.push_back(std::move(left));
    out.premises.push_back(std::move(right));
    out.leaf_premise = {0, 1};
  } else {
    throw std::invalid_argument("cannot translate dashed rule " +
                                rule_name(r));
  }
  (void)theory;
  return out;
}

namespace {

class Translator {
public:
  Translator(const Theory &theory, const TranslateOptions &options,
             LktTranslation &result)
      : theory_(theory), options_(options), result_(result) {}

  LktNode translate(const LkNode &node, const SeqCorrespondence &corr) {
    TranslationStep step = translate_step(node, corr, theory_);
    TranslationRecord rec;
    rec.rule = rule_name(*node.rule);
    rec.emitted = lkt_tree_size(step.partial);
    rec.formula_count = corr.target.formula_count();
    for (const Formula &f : corr.target.gamma)
      rec.symbol_count += symbols(f);
    result_.log.push_back(rec);
    count_polarize(step.partial);

    std::vector<std::optional<LktNode>> done(step.premises.size());
    for (std::size_t i = 0; i < step.premises.size(); ++i) {
      if (!step.premises[i])
        continue;
      if (options_.check_correspondence)
        if (auto r = correspondence_holds(*step.premises[i], theory_); !r)
          throw CorrespondenceViolation(rec.rule + " premise " +
                                        std::to_string(i) + ": " + r.reason);
      done[i] = translate(node.children[i], *step.premises[i]);
    }
    std::size_t leaf = 0;
    graft(step.partial, step, done, leaf);
    return std::move(step.partial);
  }

private:
  void graft(LktNode &n, const TranslationStep &step,
             const std::vector<std::optional<LktNode>> &done,
             std::size_t &leaf) {
    if (n.open()) {
      const auto &sub = done.at(step.leaf_premise.at(leaf++));
      if (!sub)
        throw std::logic_error("open leaf for a closed premise");
      if (!(sub->sequent == n.sequent))
        throw CorrespondenceViolation("translated premise " +
                                      to_string(sub->sequent) +
                                      " does not match leaf " +
                                      to_string(n.sequent));
      n = *sub;
      return;
    }
    for (LktNode &child : n.children)
      graft(child, step, done, leaf);
  }

  void count_polarize(const LktNode &n) {
    if (n.open())
      return;
    if (std::holds_alternative<lkt::Polarize>(*n.rule))
      ++result_.polarize_count;
    for (const LktNode &child : n.children)
      count_polarize(child);
  }

  const Theory &theory_;
  const TranslateOptions &options_;
  LktTranslation &result_;
};

bool has_dashed(const LkNode &tree) {
  std::vector<const LkNode *> stack{&tree};
  while (!stack.empty()) {
    const LkNode *n = stack.back();
    stack.pop_back();
    if (n->rule && is_dashed(*n->rule))
      return true;
    for (const LkNode &child : n->children)
      stack.push_back(&child);
  }
  return false;
}

} // namespace

LktTranslation translate_proof(const LkNode &tree, const Theory &theory,
                               const TranslateOptions &options) {
  if (!is_complete(tree))
    throw std::invalid_argument("translate_proof needs a complete tree");
  LkNode source = has_dashed(tree)
                      ? eliminate_admissible(tree, theory,
                                             CutPolicy::PermuteThrough)
                      : tree;
  LktTranslation result;
  SeqCorrespondence root = initial_correspondence(source.sequent);
  if (options.check_correspondence)
    if (auto r = correspondence_holds(root, theory); !r)
      throw CorrespondenceViolation("root: " + r.reason);
  Translator t(theory, options, result);
  result.proof = t.translate(source, root);
  return result;
}

} // namespace dpllt
