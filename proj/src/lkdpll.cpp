//===- lkdpll.cpp - The LKDPLL(T) sequent calculus ----------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/lkdpll.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace dpllt {

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string &what) {
  throw std::invalid_argument(what);
}

const Clause &goal_clause(const LkSequent &s, std::size_t index) {
  if (index >= s.goal.count())
    bad("clause index " + std::to_string(index) + " out of range");
  return s.goal[index];
}

std::optional<std::size_t> find_clause(const ClauseSet &goal,
                                       const Clause &wanted) {
  for (std::size_t i = 0; i < goal.count(); ++i)
    if (goal[i] == wanted)
      return i;
  return std::nullopt;
}

bool consistent(const Theory &theory, const LiteralSet &lits) {
  return !inconsistent(theory, lits);
}

} // namespace

std::string rule_name(const LkRule &r) {
  static const char *names[] = {"Split",   "Empty", "Assert",
                                "Subsume", "Resolve", "Weak1",
                                "Weak2",   "InvResolve", "Cut"};
  return names[r.index()];
}

std::size_t arity(const LkRule &r) {
  if (std::holds_alternative<rule::Empty>(r))
    return 0;
  if (std::holds_alternative<rule::Split>(r) ||
      std::holds_alternative<rule::Cut>(r))
    return 2;
  return 1;
}

bool is_dashed(const LkRule &r) {
  return std::holds_alternative<rule::Weak1>(r) ||
         std::holds_alternative<rule::Weak2>(r) ||
         std::holds_alternative<rule::InvResolve>(r);
}

bool is_base(const LkRule &r) {
  return !is_dashed(r) && !std::holds_alternative<rule::Cut>(r);
}

std::string to_string(const LkSequent &s) {
  return to_string(s.context) + " |- " + to_string(s.goal);
}

std::vector<LkSequent> expected_premises(const LkSequent &c, const LkRule &r) {
  return std::visit(
      overloaded{
          [&](const rule::Split &x) -> std::vector<LkSequent> {
            return {{c.context.with(~x.lit), c.goal},
                    {c.context.with(x.lit), c.goal}};
          },
          [&](const rule::Empty &) -> std::vector<LkSequent> {
            if (!c.goal.contains_empty_clause())
              bad("goal has no empty clause");
            return {};
          },
          [&](const rule::Assert &x) -> std::vector<LkSequent> {
            if (!find_clause(c.goal, Clause{x.lit}))
              bad("goal has no unit clause " + to_string(x.lit));
            return {{c.context.with(x.lit), c.goal}};
          },
          [&](const rule::Subsume &x) -> std::vector<LkSequent> {
            if (!goal_clause(c, x.clause).contains(x.lit))
              bad("literal not in subsumed clause");
            return {{c.context, c.goal.without(x.clause)}};
          },
          [&](const rule::Resolve &x) -> std::vector<LkSequent> {
            const Clause &target = goal_clause(c, x.clause);
            if (!target.contains(x.lit))
              bad("literal not in resolved clause");
            return {{c.context, c.goal.replaced(x.clause, target.without(x.lit))}};
          },
          [&](const rule::Weak1 &x) -> std::vector<LkSequent> {
            goal_clause(c, x.clause);
            return {{c.context, c.goal.without(x.clause)}};
          },
          [&](const rule::Weak2 &x) -> std::vector<LkSequent> {
            return {{x.premise_context, c.goal}};
          },
          [&](const rule::InvResolve &x) -> std::vector<LkSequent> {
            const Clause &target = goal_clause(c, x.clause);
            return {{c.context, c.goal.replaced(x.clause, target.with(x.lit))}};
          },
          [&](const rule::Cut &x) -> std::vector<LkSequent> {
            ClauseSet left = c.goal;
            std::vector<Literal> negated;
            for (Literal l : x.lits) {
              left.push_back(Clause{l});
              negated.push_back(~l);
            }
            return {{c.context, std::move(left)},
                    {c.context, c.goal.with(Clause(std::move(negated)))}};
          },
      },
      r);
}

CheckResult check_rule_instance(const LkSequent &c, const LkRule &r,
                                const std::vector<LkSequent> &premises,
                                const Theory &theory) {
  std::vector<LkSequent> expected;
  try {
    expected = expected_premises(c, r);
  } catch (const std::invalid_argument &e) {
    return CheckResult::fail(rule_name(r) + ": " + e.what());
  }
  if (premises.size() != expected.size())
    return CheckResult::fail(rule_name(r) + ": wrong number of premises");
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!premises[i].same_positions(expected[i]))
      return CheckResult::fail(rule_name(r) + ": premise " +
                               std::to_string(i) + " is " +
                               to_string(premises[i]) + ", expected " +
                               to_string(expected[i]));

  auto fail = [&](const char *why) {
    return CheckResult::fail(rule_name(r) + ": " + why);
  };
  return std::visit(
      overloaded{
          [&](const rule::Split &x) {
            if (!atoms(c.goal).contains(x.lit))
              return fail("literal does not occur in the goal");
            if (!consistent(theory, c.context.with(~x.lit)) ||
                !consistent(theory, c.context.with(x.lit)))
              return fail("an extension of the context is inconsistent");
            return CheckResult::pass();
          },
          [&](const rule::Empty &) { return CheckResult::pass(); },
          [&](const rule::Assert &x) {
            if (!consistent(theory, c.context.with(~x.lit)) ||
                !consistent(theory, c.context.with(x.lit)))
              return fail("an extension of the context is inconsistent");
            return CheckResult::pass();
          },
          [&](const rule::Subsume &x) {
            if (consistent(theory, c.context.with(~x.lit)))
              return fail("context does not entail the literal");
            return CheckResult::pass();
          },
          [&](const rule::Resolve &x) {
            if (consistent(theory, c.context.with(x.lit)))
              return fail("context does not refute the literal");
            return CheckResult::pass();
          },
          [&](const rule::Weak1 &) { return CheckResult::pass(); },
          [&](const rule::Weak2 &x) {
            if (!nsat(theory, c.context, c.goal)
                     .includes(nsat(theory, x.premise_context, c.goal)))
              return fail("premise context has consequences the conclusion "
                          "lacks");
            return CheckResult::pass();
          },
          [&](const rule::InvResolve &x) {
            if (consistent(theory, c.context.with(x.lit)))
              return fail("context does not refute the literal");
            return CheckResult::pass();
          },
          [&](const rule::Cut &) { return CheckResult::pass(); },
      },
      r);
}

namespace {

CheckResult check_node(const LkNode &node, const Theory &theory,
                       const LkCheckOptions &options) {
  if (node.open()) {
    if (options.require_complete)
      return CheckResult::fail("open leaf " + to_string(node.sequent));
    if (!node.children.empty())
      return CheckResult::fail("open node with children");
    return CheckResult::pass();
  }
  const LkRule &r = *node.rule;
  if (options.base_only && !is_base(r))
    return CheckResult::fail("non-base rule " + rule_name(r));
  if (node.children.size() != arity(r))
    return CheckResult::fail(rule_name(r) + ": arity mismatch");
  std::vector<LkSequent> premises;
  premises.reserve(node.children.size());
  for (const LkNode &child : node.children)
    premises.push_back(child.sequent);
  CheckResult here = check_rule_instance(node.sequent, r, premises, theory);
  if (!here)
    return CheckResult::fail(here.reason + " at " + to_string(node.sequent));
  return CheckResult::pass();
}

CheckResult check_subtree(const LkNode &root, const Theory &theory,
                          const LkCheckOptions &options) {
  std::vector<const LkNode *> stack{&root};
  while (!stack.empty()) {
    const LkNode *node = stack.back();
    stack.pop_back();
    CheckResult r = check_node(*node, theory, options);
    if (!r)
      return r;
    for (const LkNode &child : node->children)
      stack.push_back(&child);
  }
  return CheckResult::pass();
}

} // namespace

CheckResult check_tree(const LkNode &tree, const Theory &theory,
                       const LkCheckOptions &options) {
  if (!options.parallel || tree.children.size() < 2)
    return check_subtree(tree, theory, options);
  CheckResult root = check_node(tree, theory, options);
  if (!root)
    return root;
  std::vector<std::future<CheckResult>> pending;
  for (const LkNode &child : tree.children)
    pending.push_back(std::async(std::launch::async, [&, ptr = &child] {
      return check_subtree(*ptr, theory, options);
    }));
  CheckResult result = CheckResult::pass();
  for (auto &f : pending) {
    CheckResult r = f.get();
    if (result && !r)
      result = r;
  }
  return result;
}

std::size_t tree_size(const LkNode &tree) {
  if (tree.open())
    return 0;
  if (std::holds_alternative<rule::Cut>(*tree.rule))
    return 1 + tree_size(tree.children[1]);
  std::size_t total = is_dashed(*tree.rule) ? 0 : 1;
  for (const LkNode &child : tree.children)
    total += tree_size(child);
  return total;
}

std::size_t node_count(const LkNode &tree) {
  std::size_t total = 1;
  for (const LkNode &child : tree.children)
    total += node_count(child);
  return total;
}

bool is_complete(const LkNode &tree) {
  if (tree.open())
    return false;
  return std::all_of(tree.children.begin(), tree.children.end(),
                     [](const LkNode &c) { return is_complete(c); });
}

bool contains_cut(const LkNode &tree) {
  if (tree.rule && std::holds_alternative<rule::Cut>(*tree.rule))
    return true;
  return std::any_of(tree.children.begin(), tree.children.end(),
                     [](const LkNode &c) { return contains_cut(c); });
}

std::vector<const LkNode *> open_leaves(const LkNode &tree) {
  std::vector<const LkNode *> out;
  std::vector<const LkNode *> stack{&tree};
  while (!stack.empty()) {
    const LkNode *node = stack.back();
    stack.pop_back();
    if (node->open())
      out.push_back(node);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it)
      stack.push_back(&*it);
  }
  return out;
}

LkNode build_lgt_at(const LiteralSet &context, const ClauseSet &goal,
                    std::size_t index, const Theory &theory) {
  if (index >= goal.count())
    throw std::invalid_argument("lgt: clause index out of range");
  LkNode root = LkNode::leaf({context, goal});
  LkNode *cursor = &root;
  while (!cursor->sequent.goal[index].empty()) {
    Literal lit = cursor->sequent.goal[index][0];
    if (!inconsistent(theory, context.with(lit)))
      throw std::invalid_argument("lgt: context does not refute " +
                                  to_string(lit));
    LkRule r = rule::Resolve{lit, index};
    LkSequent premise = expected_premises(cursor->sequent, r).front();
    cursor->rule = std::move(r);
    cursor->children.push_back(LkNode::leaf(std::move(premise)));
    cursor = &cursor->children.back();
  }
  cursor->rule = rule::Empty{};
  return root;
}

LkNode build_lgt(const LiteralSet &context, const Clause &clause,
                 const ClauseSet &rest, const Theory &theory) {
  ClauseSet goal{clause};
  for (const Clause &c : rest)
    goal.push_back(c);
  return build_lgt_at(context, goal, 0, theory);
}

//===----------------------------------------------------------------------===//
// Elimination of the admissible rules
//===----------------------------------------------------------------------===//

namespace {

class Eliminator {
public:
  Eliminator(const Theory &theory, CutPolicy policy)
      : theory_(theory), policy_(policy) {}

  LkNode run(const LkNode &node) {
    if (node.open())
      throw EliminationFailed("open leaf " + to_string(node.sequent));
    std::vector<LkNode> children;
    children.reserve(node.children.size());
    for (const LkNode &child : node.children)
      children.push_back(run(child));
    const LkRule &r = *node.rule;

    if (auto *w = std::get_if<rule::Weak1>(&r))
      return insert_clause(children[0], node.sequent, w->clause);
    if (std::holds_alternative<rule::Weak2>(r))
      return recontext(children[0], node.sequent);
    if (auto *inv = std::get_if<rule::InvResolve>(&r))
      return remove_literal(children[0], node.sequent, inv->clause, inv->lit);
    if (std::holds_alternative<rule::Cut>(r) && policy_ == CutPolicy::Reject)
      throw EliminationFailed("tree contains a cut");
    return LkNode{node.sequent, r, std::move(children)};
  }

private:
  /// `src` proves target minus goal clause `pos`.
  LkNode insert_clause(const LkNode &src, const LkSequent &target,
                       std::size_t pos) {
    const LkRule &r = rule_of(src);
    auto shift = [&](std::size_t j) { return j >= pos ? j + 1 : j; };
    return std::visit(
        overloaded{
            [&](const rule::Empty &) { return axiom(target); },
            [&](const rule::Split &) { return lift(src, target, r, pos); },
            [&](const rule::Assert &) { return lift(src, target, r, pos); },
            [&](const rule::Cut &) { return lift(src, target, r, pos); },
            [&](const rule::Resolve &x) {
              return lift(src, target, rule::Resolve{x.lit, shift(x.clause)},
                          pos);
            },
            [&](const rule::Subsume &x) {
              std::size_t j = shift(x.clause);
              return lift(src, target, rule::Subsume{x.lit, j},
                          j < pos ? pos - 1 : pos);
            },
            [&](const auto &) -> LkNode {
              throw EliminationFailed("unexpected " + rule_name(r) +
                                      " under Weak1");
            },
        },
        r);
  }

  LkNode lift(const LkNode &src, const LkSequent &target, LkRule r,
              std::size_t pos) {
    std::vector<LkSequent> premises = expected_premises(target, r);
    LkNode out{target, std::move(r), {}};
    for (std::size_t i = 0; i < premises.size(); ++i)
      out.children.push_back(
          insert_clause(src.children[i], premises[i], pos));
    return out;
  }

  /// `src` proves target's goal under another context that target's
  /// context entails.
  LkNode recontext(const LkNode &src, const LkSequent &target) {
    const LkRule &r = rule_of(src);
    const LiteralSet &ctx = target.context;
    auto rebuild = [&](LkRule rr) {
      std::vector<LkSequent> premises = expected_premises(target, rr);
      LkNode out{target, rr, {}};
      for (std::size_t i = 0; i < premises.size(); ++i)
        out.children.push_back(recontext(src.children[i], premises[i]));
      return out;
    };
    return std::visit(
        overloaded{
            [&](const rule::Empty &) { return axiom(target); },
            [&](const rule::Resolve &x) {
              if (!inconsistent(theory_, ctx.with(x.lit)))
                throw EliminationFailed("Weak2: Resolve side condition lost");
              return rebuild(r);
            },
            [&](const rule::Subsume &x) {
              if (!inconsistent(theory_, ctx.with(~x.lit)))
                throw EliminationFailed("Weak2: Subsume side condition lost");
              return rebuild(r);
            },
            [&](const rule::Assert &x) {
              if (tc_entails(theory_, ctx, x.lit))
                return recontext(src.children[0], target);
              if (tc_entails(theory_, ctx, ~x.lit)) {
                std::size_t k = *find_clause(target.goal, Clause{x.lit});
                LkRule res = rule::Resolve{x.lit, k};
                LkSequent premise = expected_premises(target, res).front();
                return LkNode{target, res, {axiom(premise)}};
              }
              return rebuild(r);
            },
            [&](const rule::Split &x) {
              if (tc_entails(theory_, ctx, x.lit))
                return recontext(src.children[1], target);
              if (tc_entails(theory_, ctx, ~x.lit))
                return recontext(src.children[0], target);
              return rebuild(r);
            },
            [&](const rule::Cut &) { return rebuild(r); },
            [&](const auto &) -> LkNode {
              throw EliminationFailed("unexpected " + rule_name(r) +
                                      " under Weak2");
            },
        },
        r);
  }

  /// `src` proves target with `lit` added to goal clause `k`; the context
  /// refutes `lit`.
  LkNode remove_literal(const LkNode &src, const LkSequent &target,
                        std::size_t k, Literal lit) {
    if (target.goal[k].empty())
      return axiom(target);
    const LkRule &r = rule_of(src);
    auto rebuild = [&](LkRule rr, std::size_t child_k) {
      std::vector<LkSequent> premises = expected_premises(target, rr);
      LkNode out{target, rr, {}};
      for (std::size_t i = 0; i < premises.size(); ++i)
        out.children.push_back(
            remove_literal(src.children[i], premises[i], child_k, lit));
      return out;
    };
    auto reuse = [&](LkRule rr) {
      // The premise no longer mentions clause k, so the old subtree fits.
      LkSequent premise = expected_premises(target, rr).front();
      LkNode child = src.children[0];
      child.sequent = std::move(premise);
      return LkNode{target, std::move(rr), {std::move(child)}};
    };
    return std::visit(
        overloaded{
            [&](const rule::Empty &) { return axiom(target); },
            [&](const rule::Resolve &x) {
              if (x.clause == k && x.lit == lit) {
                LkNode child = src.children[0];
                child.sequent = target;
                return child;
              }
              return rebuild(r, k);
            },
            [&](const rule::Subsume &x) {
              if (x.clause != k)
                return rebuild(r, x.clause < k ? k - 1 : k);
              if (target.goal[k].contains(x.lit))
                return reuse(r);
              // The context entails and refutes `lit`, so it is
              // inconsistent and subsumes any literal.
              return reuse(rule::Subsume{target.goal[k][0], k});
            },
            [&](const rule::Assert &) { return rebuild(r, k); },
            [&](const rule::Split &) { return rebuild(r, k); },
            [&](const rule::Cut &) { return rebuild(r, k); },
            [&](const auto &) -> LkNode {
              throw EliminationFailed("unexpected " + rule_name(r) +
                                      " under InvResolve");
            },
        },
        r);
  }

  static const LkRule &rule_of(const LkNode &node) {
    if (node.open())
      throw EliminationFailed("open leaf " + to_string(node.sequent));
    return *node.rule;
  }

  static LkNode axiom(const LkSequent &target) {
    return LkNode{target, rule::Empty{}, {}};
  }

  const Theory &theory_;
  CutPolicy policy_;
};

} // namespace

LkNode eliminate_admissible(const LkNode &tree, const Theory &theory,
                            CutPolicy policy) {
  if (policy == CutPolicy::Reject && contains_cut(tree))
    throw EliminationFailed("tree contains a cut");
  try {
    return Eliminator(theory, policy).run(tree);
  } catch (const std::invalid_argument &e) {
    throw EliminationFailed(e.what());
  }
}

} // namespace dpllt
