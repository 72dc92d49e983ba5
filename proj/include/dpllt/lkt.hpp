//===- lkt.hpp - The focused polarized calculus LK(T)p ------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Formulae are immutable trees shared by pointer. Besides the four binary
// connectives there are the units Top (nullary positive conjunction) and
// Bottom (nullary negative disjunction), which give the empty clause and the
// zero-literal general cut an encoding.
//
// Sequents are either focused `Gamma |- [P]` or unfocused
// `Gamma |- Delta ; O`, each under a polarity set. Gamma is a set; Delta and
// the store O are multisets whose first element is the one rules act on.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/core.hpp"
#include "dpllt/errors.hpp"
#include "dpllt/theory.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dpllt {

enum class FormulaKind { Lit, AndP, OrP, AndN, OrN, Top, Bottom };

class Formula {
public:
  static Formula lit(Literal l);
  static Formula and_p(Formula a, Formula b);
  static Formula or_p(Formula a, Formula b);
  static Formula and_n(Formula a, Formula b);
  static Formula or_n(Formula a, Formula b);
  static Formula top();
  static Formula bottom();

  FormulaKind kind() const;
  /// Valid for Lit formulas only.
  Literal literal() const;
  /// Valid for binary connectives only.
  const Formula &lhs() const;
  const Formula &rhs() const;

  bool is_literal() const { return kind() == FormulaKind::Lit; }
  /// Number of literal occurrences.
  std::size_t width() const;
  bool mentions(Atom atom) const;

  bool operator==(const Formula &other) const;
  std::strong_ordering operator<=>(const Formula &other) const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Polish notation: `&+ A B`, `|+ A B`, `&- A B`, `|- A B`, `T`, `F`, and
/// signed integers for literals.
std::string to_string(const Formula &f);

/// Involutive negation: literals are negated and each connective is sent to
/// its De Morgan dual of opposite polarity.
Formula negate_formula(const Formula &f);

/// Right-nested negative disjunction of the literals; Bottom if empty.
Formula or_spine(const std::vector<Literal> &lits);
/// The literals of a negative-disjunction spine, left to right.
std::vector<Literal> spine_literals(const Formula &f);

class PolaritySet {
public:
  PolaritySet() = default;

  bool contains(Literal l) const { return lits_.contains(l); }
  /// The set extended with `l`; throws PolarityConflict if it holds ~l.
  PolaritySet with(Literal l) const;
  const LiteralSet &literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool operator==(const PolaritySet &) const = default;

private:
  LiteralSet lits_;
};

enum class Polarity { Positive, Negative, Unpolarized };

Polarity classify(const Formula &f, const PolaritySet &polarity);

/// A sorted set of formulae.
class FormulaSet {
public:
  FormulaSet() = default;
  explicit FormulaSet(std::vector<Formula> formulas);

  bool contains(const Formula &f) const;
  FormulaSet with(const Formula &f) const;
  bool insert(const Formula &f);
  /// The literal members, as read by theory calls.
  LiteralSet atomic() const;
  bool mentions(Atom atom) const;

  std::size_t size() const { return items_.size(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  bool operator==(const FormulaSet &) const = default;

private:
  std::vector<Formula> items_;
};

struct LktSequent {
  bool focused = false;
  FormulaSet gamma;
  std::optional<Formula> focus;
  std::vector<Formula> delta;
  std::vector<Literal> store;
  PolaritySet polarity;

  static LktSequent unfocused(FormulaSet gamma, PolaritySet polarity,
                              std::vector<Formula> delta = {},
                              std::vector<Literal> store = {});
  static LktSequent with_focus(FormulaSet gamma, Formula focus,
                               PolaritySet polarity);

  /// Number of formula members: Gamma, the focus and Delta.
  std::size_t formula_count() const;
  /// Delta and the store are compared as multisets.
  bool operator==(const LktSequent &other) const;
};

std::string to_string(const LktSequent &s);

namespace lkt {
struct AndP {
  bool operator==(const AndP &) const = default;
};
struct OrP {
  int side = 0; ///< 0 keeps the left disjunct, 1 the right one.
  bool operator==(const OrP &) const = default;
};
struct TopP {
  bool operator==(const TopP &) const = default;
};
struct Init {
  bool operator==(const Init &) const = default;
};
struct InitTheory {
  bool operator==(const InitTheory &) const = default;
};
struct Release {
  bool operator==(const Release &) const = default;
};
struct AndN {
  bool operator==(const AndN &) const = default;
};
struct OrN {
  bool operator==(const OrN &) const = default;
};
struct BottomN {
  bool operator==(const BottomN &) const = default;
};
struct Store {
  bool operator==(const Store &) const = default;
};
enum class Zone {
  Store, ///< Moves a literal of O into the polarity set.
  Atom,  ///< With O empty, polarizes a literal whose atom occurs in Gamma.
};
struct Polarize {
  Literal lit;
  Zone zone = Zone::Atom;
  bool operator==(const Polarize &) const = default;
};
struct Decide {
  Formula positive;
  bool operator==(const Decide &) const = default;
};
struct TheoryClose {
  bool operator==(const TheoryClose &) const = default;
};
/// Premises: Gamma with `lit`, then Gamma with its negation.
struct AnalyticCut {
  Literal lit;
  bool operator==(const AnalyticCut &) const = default;
};
/// Premises: Gamma with every l_i, then Gamma with the negative disjunction
/// of their negations.
struct GeneralCut {
  std::vector<Literal> lits;
  bool operator==(const GeneralCut &) const = default;
};
} // namespace lkt

using LktRule =
    std::variant<lkt::AndP, lkt::OrP, lkt::TopP, lkt::Init, lkt::InitTheory,
                 lkt::Release, lkt::AndN, lkt::OrN, lkt::BottomN, lkt::Store,
                 lkt::Polarize, lkt::Decide, lkt::TheoryClose,
                 lkt::AnalyticCut, lkt::GeneralCut>;

std::string rule_name(const LktRule &r);

struct LktNode {
  LktSequent sequent;
  std::optional<LktRule> rule; ///< Absent at open leaves.
  std::vector<LktNode> children;

  bool open() const { return !rule.has_value(); }
  static LktNode leaf(LktSequent s) { return LktNode{std::move(s), {}, {}}; }
};

/// Premises of a rule instance; throws std::invalid_argument when the rule
/// does not apply structurally. Polarity conflicts surface as
/// PolarityConflict.
std::vector<LktSequent> expected_lkt_premises(const LktSequent &conclusion,
                                              const LktRule &r);

CheckResult check_lkt_rule(const LktSequent &conclusion, const LktRule &r,
                           const std::vector<LktSequent> &premises,
                           const Theory &theory);

CheckResult check_lkt_tree(const LktNode &tree, const Theory &theory,
                           bool require_complete = false,
                           bool parallel = false);

/// Node count without open leaves and without the left premise subtree of
/// every general cut.
std::size_t lkt_tree_size(const LktNode &tree);
std::size_t lkt_node_count(const LktNode &tree);
bool lkt_is_complete(const LktNode &tree);

} // namespace dpllt
