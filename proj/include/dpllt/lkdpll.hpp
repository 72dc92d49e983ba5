//===- lkdpll.hpp - The LKDPLL(T) sequent calculus ----------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Sequents are `context |- goal` with a literal-set context and a clause
// multiset goal. Rules that act on one clause name it by position in the
// goal, so the premises of a rule instance are a function of the conclusion
// and the rule tag (`expected_premises`). The checker compares the stored
// premises against that function position by position.
//
// Weak1, Weak2 and InvResolve are admissible ("dashed") rules; Cut is the
// n-ary clause cut. The counted size ignores dashed nodes, open leaves and
// the left (lemma) branch of every cut.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/core.hpp"
#include "dpllt/errors.hpp"
#include "dpllt/theory.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dpllt {

namespace rule {
struct Split {
  Literal lit;
  bool operator==(const Split &) const = default;
};
struct Empty {
  bool operator==(const Empty &) const = default;
};
/// Adds `lit` to the context; the goal must contain the unit clause `lit`.
struct Assert {
  Literal lit;
  bool operator==(const Assert &) const = default;
};
/// Drops goal clause `clause`, which contains `lit`.
struct Subsume {
  Literal lit;
  std::size_t clause = 0;
  bool operator==(const Subsume &) const = default;
};
/// Removes one occurrence of `lit` from goal clause `clause`.
struct Resolve {
  Literal lit;
  std::size_t clause = 0;
  bool operator==(const Resolve &) const = default;
};
/// Premise lacks goal clause `clause`.
struct Weak1 {
  std::size_t clause = 0;
  bool operator==(const Weak1 &) const = default;
};
/// Premise has the same goal under `premise_context`.
struct Weak2 {
  LiteralSet premise_context;
  bool operator==(const Weak2 &) const = default;
};
/// Premise has `lit` appended to goal clause `clause`.
struct InvResolve {
  Literal lit;
  std::size_t clause = 0;
  bool operator==(const InvResolve &) const = default;
};
/// Left premise: goal plus the units l_i. Right premise: goal plus the
/// clause of the negations.
struct Cut {
  std::vector<Literal> lits;
  bool operator==(const Cut &) const = default;
};
} // namespace rule

using LkRule = std::variant<rule::Split, rule::Empty, rule::Assert,
                            rule::Subsume, rule::Resolve, rule::Weak1,
                            rule::Weak2, rule::InvResolve, rule::Cut>;

std::string rule_name(const LkRule &r);
std::size_t arity(const LkRule &r);
/// Weak1, Weak2 and InvResolve.
bool is_dashed(const LkRule &r);
/// Split, Empty, Assert, Subsume and Resolve.
bool is_base(const LkRule &r);

struct LkSequent {
  LiteralSet context;
  ClauseSet goal;
  /// Context equality and multiset goal equality.
  bool operator==(const LkSequent &) const = default;
  /// Context equality and clause-by-clause goal equality.
  bool same_positions(const LkSequent &other) const {
    return context == other.context && goal.same_positions(other.goal);
  }
};

std::string to_string(const LkSequent &s);

struct LkNode {
  LkSequent sequent;
  std::optional<LkRule> rule; ///< Absent at open leaves.
  std::vector<LkNode> children;

  bool open() const { return !rule.has_value(); }
  static LkNode leaf(LkSequent s) { return LkNode{std::move(s), {}, {}}; }
};

/// The premises a rule instance must have. Throws std::invalid_argument when
/// the rule does not apply structurally (index out of range, literal absent,
/// missing unit or empty clause).
std::vector<LkSequent> expected_premises(const LkSequent &conclusion,
                                         const LkRule &r);

CheckResult check_rule_instance(const LkSequent &conclusion, const LkRule &r,
                                const std::vector<LkSequent> &premises,
                                const Theory &theory);

struct LkCheckOptions {
  /// Reject dashed rules and cuts.
  bool base_only = false;
  /// Reject open leaves.
  bool require_complete = false;
  /// Check the root's subtrees on separate threads.
  bool parallel = false;
};

CheckResult check_tree(const LkNode &tree, const Theory &theory,
                       const LkCheckOptions &options = {});

std::size_t tree_size(const LkNode &tree);
std::size_t node_count(const LkNode &tree);
bool is_complete(const LkNode &tree);
bool contains_cut(const LkNode &tree);
std::vector<const LkNode *> open_leaves(const LkNode &tree);

/// Complete tree for `context |- goal` where every literal of goal[index]
/// is refuted by the context: one Resolve per literal, then Empty.
LkNode build_lgt_at(const LiteralSet &context, const ClauseSet &goal,
                    std::size_t index, const Theory &theory);
/// build_lgt_at with `clause` placed first in the goal.
LkNode build_lgt(const LiteralSet &context, const Clause &clause,
                 const ClauseSet &rest, const Theory &theory);

enum class CutPolicy {
  Reject,         ///< Refuse trees containing Cut.
  PermuteThrough, ///< Push dashed rules through cuts into both premises.
};

/// Rewrites a complete tree into one without Weak1, Weak2 and InvResolve,
/// with the same conclusion and no larger counted size. Dashed rules are
/// removed innermost first by permuting them towards the leaves.
LkNode eliminate_admissible(const LkNode &tree, const Theory &theory,
                            CutPolicy policy = CutPolicy::Reject);

} // namespace dpllt
