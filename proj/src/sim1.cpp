//===- sim1.cpp - Growing LKDPLL proofs alongside DPLL(T) runs ----------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/sim1.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dpllt {

namespace {

using Builder = std::function<LkNode(const LkSequent &)>;

LkNode node(LkSequent s, LkRule r, std::vector<LkNode> children) {
  return LkNode{std::move(s), std::move(r), std::move(children)};
}

/// A one-premise rule instance over an open premise.
LkNode over_open(const LkSequent &conclusion, LkRule r) {
  LkSequent premise = expected_premises(conclusion, r).front();
  return node(conclusion, std::move(r), {LkNode::leaf(std::move(premise))});
}

/// Chains one-premise rules from `conclusion` and returns the tree with a
/// pointer to its (open) bottom-most leaf.
struct Chain {
  LkNode root;
  LkNode *tip;

  explicit Chain(LkSequent conclusion)
      : root(LkNode::leaf(std::move(conclusion))), tip(&root) {}
  Chain(const Chain &) = delete;

  void apply(LkRule r) {
    LkSequent premise = expected_premises(tip->sequent, r).front();
    tip->rule = std::move(r);
    tip->children.push_back(LkNode::leaf(std::move(premise)));
    tip = &tip->children.back();
  }
  void close(LkRule r) { tip->rule = std::move(r); }
};

/// Replaces every open leaf accepted by `wanted`; returns the counted sizes
/// of the grafted subtrees.
std::vector<std::size_t>
replace_leaves(LkNode &tree, const std::function<bool(const LkSequent &)> &wanted,
               const Builder &build) {
  std::vector<std::size_t> sizes;
  std::vector<LkNode *> stack{&tree};
  while (!stack.empty()) {
    LkNode *n = stack.back();
    stack.pop_back();
    if (n->open()) {
      if (wanted(n->sequent)) {
        *n = build(n->sequent);
        sizes.push_back(tree_size(*n));
      }
      continue;
    }
    for (LkNode &child : n->children)
      stack.push_back(&child);
  }
  return sizes;
}

bool has_open_leaf(const LkNode &tree) {
  if (tree.open())
    return true;
  return std::any_of(tree.children.begin(), tree.children.end(),
                     [](const LkNode &c) { return has_open_leaf(c); });
}

void record(SimSession &session, const DpllStep &s,
            const std::vector<std::size_t> &sizes, std::size_t bound,
            std::size_t strict_bound) {
  StepRecord rec;
  rec.step_index = session.steps;
  rec.kind = step_name(s);
  rec.basic = is_basic(s);
  rec.leaves_replaced = sizes.size();
  for (std::size_t n : sizes) {
    rec.max_leaf_size = std::max(rec.max_leaf_size, n);
    rec.total_size += n;
  }
  rec.bound = bound;
  rec.strict_bound = strict_bound;
  session.log.push_back(rec);
}

void finish(SimSession &session, DpllState next) {
  session.state = std::move(next);
  ++session.steps;
  if (session.options.check_correspondence &&
      !correspondence_holds(session.tree, session.state))
    throw CorrespondenceViolation("tree does not correspond to the state "
                                  "after step " +
                                  std::to_string(session.steps - 1));
}

} // namespace

SimSession init_session(const ClauseSet &clauses, const Theory &theory,
                        const SimOptions &options) {
  SimSession session;
  session.state = DpllState::initial(clauses);
  session.tree = LkNode::leaf({LiteralSet{}, clauses});
  session.theory = &theory;
  session.options = options;
  return session;
}

bool correspondence_holds(const LkNode &tree, const DpllState &state) {
  if (state.unsat)
    return !has_open_leaf(tree);
  std::vector<LiteralSet> points = backpoints(state.trail);
  for (const LkNode *leaf : open_leaves(tree)) {
    if (!(leaf->sequent.goal == state.clauses))
      return false;
    if (std::find(points.begin(), points.end(), leaf->sequent.context) ==
        points.end())
      return false;
  }
  return true;
}

void extend_basic(SimSession &session, const DpllStep &s) {
  if (!is_basic(s))
    throw std::invalid_argument("extend_basic: " + step_name(s) +
                                " is not a basic step");
  const Theory &theory = *session.theory;
  DpllState next =
      apply_step(session.state, s, theory, session.options.engine);
  const ClauseSet &phi = session.state.clauses;
  const LiteralSet current = forget(session.state.trail);
  auto at_current = [&](const LkSequent &seq) {
    return seq.context == current && seq.goal.same_positions(phi);
  };

  Builder build;
  std::size_t strict = phi.size() + 1;
  bool closing = false;
  if (auto *f = std::get_if<step::Fail>(&s)) {
    closing = true;
    strict = phi.size() - phi[f->clause].size() + 1;
    build = [&, i = f->clause](const LkSequent &seq) {
      return build_lgt_at(seq.context, seq.goal, i, theory);
    };
  } else if (auto *b = std::get_if<step::Backtrack>(&s)) {
    closing = true;
    strict = phi.size() - phi[b->clause].size() + 1;
    build = [&, i = b->clause](const LkSequent &seq) {
      return build_lgt_at(seq.context, seq.goal, i, theory);
    };
  } else if (auto *d = std::get_if<step::Decide>(&s)) {
    build = [&, l = d->lit](const LkSequent &seq) {
      if (inconsistent(theory, seq.context.with(l)))
        return over_open(seq, rule::Weak2{seq.context.with(~l)});
      if (inconsistent(theory, seq.context.with(~l)))
        return over_open(seq, rule::Weak2{seq.context.with(l)});
      LkRule split = rule::Split{l};
      std::vector<LkSequent> premises = expected_premises(seq, split);
      return node(seq, split,
                  {LkNode::leaf(premises[0]), LkNode::leaf(premises[1])});
    };
  } else if (auto *u = std::get_if<step::UnitPropagate>(&s)) {
    build = [&, i = u->clause, l = u->lit](const LkSequent &seq) {
      if (inconsistent(theory, seq.context.with(~l)))
        return over_open(seq, rule::Weak2{seq.context.with(l)});
      if (inconsistent(theory, seq.context.with(l)))
        return build_lgt_at(seq.context, seq.goal, i, theory);
      Clause rest = seq.goal[i].without(l);
      Chain chain(seq);
      for (Literal c : rest)
        chain.apply(rule::Resolve{c, i});
      chain.apply(rule::Assert{l});
      for (Literal c : rest)
        chain.apply(rule::InvResolve{c, i});
      return std::move(chain.root);
    };
  } else if (auto *t = std::get_if<step::TheoryPropagate>(&s)) {
    build = [&, l = t->lit](const LkSequent &seq) {
      return over_open(seq, rule::Weak2{seq.context.with(l)});
    };
  }

  std::vector<std::size_t> sizes =
      replace_leaves(session.tree, at_current, build);
  if (closing && sizes.empty() && std::holds_alternative<step::Fail>(s) &&
      has_open_leaf(session.tree))
    throw NoMatchingLeaf("no open leaf labelled " +
                         to_string(LkSequent{current, phi}));
  record(session, s, sizes, phi.size() + 1, strict);
  finish(session, std::move(next));
}

void extend_advanced(SimSession &session, const DpllStep &s) {
  if (is_basic(s))
    throw std::invalid_argument("extend_advanced: " + step_name(s) +
                                " is a basic step");
  const Theory &theory = *session.theory;
  const std::size_t budget = session.options.engine.lemma_budget;
  DpllState next =
      apply_step(session.state, s, theory, session.options.engine);
  const ClauseSet &phi = session.state.clauses;
  const Trail &trail = session.state.trail;

  std::vector<LiteralSet> targets = backpoints(trail);
  Builder build;

  if (auto *j = std::get_if<step::TBackjump>(&s)) {
    Trail kept = trail.prefix(trail.decision_position(j->level));
    const LiteralSet base = forget(kept);
    std::vector<LiteralSet> below = backstrict(kept);
    std::erase_if(targets, [&](const LiteralSet &d) {
      return std::find(below.begin(), below.end(), d) != below.end();
    });

    std::vector<Literal> cut_lits;
    for (Literal c : j->backjump_clause)
      cut_lits.push_back(~c);
    cut_lits.push_back(~j->lit);
    LkRule cut = rule::Cut{cut_lits};
    std::vector<LkSequent> premises =
        expected_premises(LkSequent{base, phi}, cut);

    LkNode lemma = discharge_theory_lemma(premises[0].goal, theory, budget);
    LkNode left = node(premises[0], rule::Weak2{LiteralSet{}}, {lemma});

    const std::size_t n = phi.count();
    const Literal lbj = j->lit;
    Chain right(premises[1]);
    if (inconsistent(theory, base.with(~lbj))) {
      right.apply(rule::Subsume{lbj, n});
      right.apply(rule::Weak2{base.with(lbj)});
    } else {
      for (Literal c : j->backjump_clause)
        right.apply(rule::Resolve{c, n});
      if (inconsistent(theory, base.with(lbj))) {
        right.apply(rule::Resolve{lbj, n});
        right.close(rule::Empty{});
      } else {
        right.apply(rule::Assert{lbj});
        right.apply(rule::Subsume{lbj, n});
      }
    }
    LkNode core = node(LkSequent{base, phi}, cut,
                       {std::move(left), std::move(right.root)});
    build = [core = std::move(core), base](const LkSequent &seq) {
      if (seq.context == base)
        return core;
      return node(seq, rule::Weak2{base}, {core});
    };
  } else if (auto *l = std::get_if<step::TLearn>(&s)) {
    std::vector<Literal> cut_lits;
    for (Literal c : l->clause)
      cut_lits.push_back(~c);
    LkRule cut = rule::Cut{cut_lits};
    ClauseSet lemma_goal =
        expected_premises(LkSequent{LiteralSet{}, phi}, cut)[0].goal;
    LkNode lemma = discharge_theory_lemma(lemma_goal, theory, budget);
    build = [cut, lemma = std::move(lemma)](const LkSequent &seq) {
      std::vector<LkSequent> premises = expected_premises(seq, cut);
      LkNode left = node(premises[0], rule::Weak2{LiteralSet{}}, {lemma});
      return node(seq, cut, {std::move(left), LkNode::leaf(premises[1])});
    };
  } else if (auto *f = std::get_if<step::TForget>(&s)) {
    build = [i = f->clause](const LkSequent &seq) {
      return over_open(seq, rule::Weak1{i});
    };
  } else {
    std::erase_if(targets, [](const LiteralSet &d) { return d.empty(); });
    build = [](const LkSequent &seq) {
      return over_open(seq, rule::Weak2{LiteralSet{}});
    };
  }

  std::set<LiteralSet> keys(targets.begin(), targets.end());
  std::vector<std::size_t> sizes = replace_leaves(
      session.tree,
      [&](const LkSequent &seq) {
        return keys.count(seq.context) && seq.goal.same_positions(phi);
      },
      build);
  record(session, s, sizes, phi.size() + 3, phi.size() + 3);
  finish(session, std::move(next));
}

void extend(SimSession &session, const DpllStep &s) {
  if (is_basic(s))
    extend_basic(session, s);
  else
    extend_advanced(session, s);
}

LkNode discharge_theory_lemma(const ClauseSet &goal, const Theory &theory,
                              std::size_t budget) {
  RunResult result = run(goal, theory, budget);
  if (result.outcome == Outcome::Sat)
    throw LemmaDischargeFailed("lemma goal " + to_string(goal) +
                               " is satisfiable");
  if (result.outcome == Outcome::Limit)
    throw LemmaDischargeFailed("lemma goal " + to_string(goal) +
                               " not refuted within " +
                               std::to_string(budget) + " steps");
  SimSession session = init_session(goal, theory);
  for (const DpllStep &s : result.trace)
    extend_basic(session, s);
  return std::move(session.tree);
}

LkCertificate certify_unsat(const ClauseSet &clauses, const DpllTrace &trace,
                            const Theory &theory, const SimOptions &options) {
  SimSession session = init_session(clauses, theory, options);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    try {
      extend(session, trace[i]);
    } catch (const SideConditionViolated &e) {
      throw e.at(i);
    }
  }
  if (!session.state.unsat)
    throw std::invalid_argument("certify_unsat: trace does not end in UNSAT");
  return LkCertificate{std::move(session.tree), std::move(session.log)};
}

} // namespace dpllt
