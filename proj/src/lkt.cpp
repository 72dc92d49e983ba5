//===- lkt.cpp - The focused polarized calculus LK(T)p ------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/lkt.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace dpllt {

struct Formula::Node {
  FormulaKind kind;
  Literal lit;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t width;
};

namespace {

bool binary(FormulaKind k) {
  return k == FormulaKind::AndP || k == FormulaKind::OrP ||
         k == FormulaKind::AndN || k == FormulaKind::OrN;
}

} // namespace

Formula Formula::lit(Literal l) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Lit, l, std::nullopt, std::nullopt, 1}));
}

#define DPLLT_BINARY(name, tag)                                                \
  Formula Formula::name(Formula a, Formula b) {                               \
    std::size_t w = a.width() + b.width();                                     \
    return Formula(std::make_shared<const Node>(                               \
        Node{FormulaKind::tag, Literal{}, std::move(a), std::move(b), w}));    \
  }
DPLLT_BINARY(and_p, AndP)
DPLLT_BINARY(or_p, OrP)
DPLLT_BINARY(and_n, AndN)
DPLLT_BINARY(or_n, OrN)
#undef DPLLT_BINARY

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(
      Node{FormulaKind::Top, Literal{}, std::nullopt, std::nullopt, 0}));
  return t;
}

Formula Formula::bottom() {
  static const Formula b(std::make_shared<const Node>(
      Node{FormulaKind::Bottom, Literal{}, std::nullopt, std::nullopt, 0}));
  return b;
}

FormulaKind Formula::kind() const { return node_->kind; }

Literal Formula::literal() const {
  if (node_->kind != FormulaKind::Lit)
    throw std::logic_error("literal() on a compound formula");
  return node_->lit;
}

const Formula &Formula::lhs() const {
  if (!node_->lhs)
    throw std::logic_error("lhs() on a non-binary formula");
  return *node_->lhs;
}

const Formula &Formula::rhs() const {
  if (!node_->rhs)
    throw std::logic_error("rhs() on a non-binary formula");
  return *node_->rhs;
}

std::size_t Formula::width() const { return node_->width; }

bool Formula::mentions(Atom atom) const {
  switch (kind()) {
  case FormulaKind::Lit:
    return literal().atom() == atom;
  case FormulaKind::Top:
  case FormulaKind::Bottom:
    return false;
  default:
    return lhs().mentions(atom) || rhs().mentions(atom);
  }
}

bool Formula::operator==(const Formula &other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::strong_ordering Formula::operator<=>(const Formula &other) const {
  if (node_ == other.node_)
    return std::strong_ordering::equal;
  if (auto c = kind() <=> other.kind(); c != 0)
    return c;
  if (kind() == FormulaKind::Lit)
    return literal() <=> other.literal();
  if (!binary(kind()))
    return std::strong_ordering::equal;
  if (auto c = lhs() <=> other.lhs(); c != 0)
    return c;
  return rhs() <=> other.rhs();
}

namespace {

void print(std::ostringstream &out, const Formula &f) {
  switch (f.kind()) {
  case FormulaKind::Lit:
    out << f.literal().to_int();
    return;
  case FormulaKind::Top:
    out << 'T';
    return;
  case FormulaKind::Bottom:
    out << 'F';
    return;
  case FormulaKind::AndP:
    out << "&+ ";
    break;
  case FormulaKind::OrP:
    out << "|+ ";
    break;
  case FormulaKind::AndN:
    out << "&- ";
    break;
  case FormulaKind::OrN:
    out << "|- ";
    break;
  }
  print(out, f.lhs());
  out << ' ';
  print(out, f.rhs());
}

} // namespace

std::string to_string(const Formula &f) {
  std::ostringstream out;
  print(out, f);
  return out.str();
}

Formula negate_formula(const Formula &f) {
  switch (f.kind()) {
  case FormulaKind::Lit:
    return Formula::lit(~f.literal());
  case FormulaKind::Top:
    return Formula::bottom();
  case FormulaKind::Bottom:
    return Formula::top();
  case FormulaKind::AndP:
    return Formula::or_n(negate_formula(f.lhs()), negate_formula(f.rhs()));
  case FormulaKind::OrP:
    return Formula::and_n(negate_formula(f.lhs()), negate_formula(f.rhs()));
  case FormulaKind::AndN:
    return Formula::or_p(negate_formula(f.lhs()), negate_formula(f.rhs()));
  case FormulaKind::OrN:
    return Formula::and_p(negate_formula(f.lhs()), negate_formula(f.rhs()));
  }
  throw std::logic_error("unreachable");
}

Formula or_spine(const std::vector<Literal> &lits) {
  if (lits.empty())
    return Formula::bottom();
  Formula acc = Formula::lit(lits.back());
  for (std::size_t i = lits.size() - 1; i-- > 0;)
    acc = Formula::or_n(Formula::lit(lits[i]), std::move(acc));
  return acc;
}

std::vector<Literal> spine_literals(const Formula &f) {
  std::vector<Literal> out;
  const Formula *cur = &f;
  while (cur->kind() == FormulaKind::OrN) {
    if (!cur->lhs().is_literal())
      throw std::invalid_argument("not a disjunctive spine: " + to_string(f));
    out.push_back(cur->lhs().literal());
    cur = &cur->rhs();
  }
  if (cur->is_literal())
    out.push_back(cur->literal());
  else if (cur->kind() != FormulaKind::Bottom || !out.empty())
    throw std::invalid_argument("not a disjunctive spine: " + to_string(f));
  return out;
}

PolaritySet PolaritySet::with(Literal l) const {
  if (lits_.contains(~l))
    throw PolarityConflict("polarity set already holds " + to_string(~l));
  PolaritySet out = *this;
  out.lits_.insert(l);
  return out;
}

Polarity classify(const Formula &f, const PolaritySet &polarity) {
  switch (f.kind()) {
  case FormulaKind::AndP:
  case FormulaKind::OrP:
  case FormulaKind::Top:
    return Polarity::Positive;
  case FormulaKind::AndN:
  case FormulaKind::OrN:
  case FormulaKind::Bottom:
    return Polarity::Negative;
  case FormulaKind::Lit:
    if (polarity.contains(f.literal()))
      return Polarity::Positive;
    if (polarity.contains(~f.literal()))
      return Polarity::Negative;
    return Polarity::Unpolarized;
  }
  throw std::logic_error("unreachable");
}

FormulaSet::FormulaSet(std::vector<Formula> formulas)
    : items_(std::move(formulas)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool FormulaSet::contains(const Formula &f) const {
  return std::binary_search(items_.begin(), items_.end(), f);
}

bool FormulaSet::insert(const Formula &f) {
  auto it = std::lower_bound(items_.begin(), items_.end(), f);
  if (it != items_.end() && *it == f)
    return false;
  items_.insert(it, f);
  return true;
}

FormulaSet FormulaSet::with(const Formula &f) const {
  FormulaSet out = *this;
  out.insert(f);
  return out;
}

LiteralSet FormulaSet::atomic() const {
  std::vector<Literal> lits;
  for (const Formula &f : items_)
    if (f.is_literal())
      lits.push_back(f.literal());
  return LiteralSet(std::move(lits));
}

bool FormulaSet::mentions(Atom atom) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Formula &f) { return f.mentions(atom); });
}

LktSequent LktSequent::unfocused(FormulaSet gamma, PolaritySet polarity,
                                 std::vector<Formula> delta,
                                 std::vector<Literal> store) {
  LktSequent s;
  s.gamma = std::move(gamma);
  s.polarity = std::move(polarity);
  s.delta = std::move(delta);
  s.store = std::move(store);
  return s;
}

LktSequent LktSequent::with_focus(FormulaSet gamma, Formula focus,
                                  PolaritySet polarity) {
  LktSequent s;
  s.focused = true;
  s.gamma = std::move(gamma);
  s.focus = std::move(focus);
  s.polarity = std::move(polarity);
  return s;
}

std::size_t LktSequent::formula_count() const {
  return gamma.size() + (focus ? 1 : 0) + delta.size();
}

bool LktSequent::operator==(const LktSequent &other) const {
  if (focused != other.focused || !(gamma == other.gamma) ||
      !(polarity == other.polarity) || focus != other.focus ||
      delta.size() != other.delta.size() || store.size() != other.store.size())
    return false;
  auto d1 = delta, d2 = other.delta;
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  auto o1 = store, o2 = other.store;
  std::sort(o1.begin(), o1.end());
  std::sort(o2.begin(), o2.end());
  return d1 == d2 && o1 == o2;
}

std::string to_string(const LktSequent &s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const Formula &f : s.gamma) {
    out << (first ? "" : ", ") << to_string(f);
    first = false;
  }
  out << "} |- ";
  if (s.focused) {
    out << '[' << to_string(*s.focus) << ']';
  } else {
    first = true;
    for (const Formula &f : s.delta) {
      out << (first ? "" : ", ") << to_string(f);
      first = false;
    }
    out << " ;";
    for (Literal l : s.store)
      out << ' ' << to_string(l);
  }
  out << " P=" << to_string(s.polarity.literals());
  return out.str();
}

std::string rule_name(const LktRule &r) {
  static const char *const names[] = {
      "and+",    "or+",   "top+",     "init",   "init-T",
      "release", "and-",  "or-",      "bot-",   "store",
      "polarize", "decide", "theory-close", "acut", "gcut"};
  return names[r.index()];
}

namespace {

[[noreturn]] void mismatch(const LktRule &r, const std::string &why) {
  throw std::invalid_argument(rule_name(r) + ": " + why);
}

const Formula &require_focus(const LktSequent &s, const LktRule &r) {
  if (!s.focused || !s.focus)
    mismatch(r, "conclusion is not focused");
  return *s.focus;
}

const Formula &require_head(const LktSequent &s, const LktRule &r) {
  if (s.focused)
    mismatch(r, "conclusion is focused");
  if (s.delta.empty())
    mismatch(r, "no formula to decompose");
  return s.delta.front();
}

void require_quiescent(const LktSequent &s, const LktRule &r, bool store_ok) {
  if (s.focused)
    mismatch(r, "conclusion is focused");
  if (!s.delta.empty())
    mismatch(r, "conclusion has unprocessed formulas");
  if (!store_ok && !s.store.empty())
    mismatch(r, "conclusion has a non-empty store");
}

LktSequent rest_with(const LktSequent &s, std::vector<Formula> front) {
  LktSequent out = s;
  out.delta = std::move(front);
  out.delta.insert(out.delta.end(), s.delta.begin() + 1, s.delta.end());
  return out;
}

} // namespace

std::vector<LktSequent> expected_lkt_premises(const LktSequent &c,
                                              const LktRule &r) {
  using std::vector;
  return std::visit(
      [&](const auto &x) -> vector<LktSequent> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, lkt::AndP>) {
          const Formula &f = require_focus(c, r);
          if (f.kind() != FormulaKind::AndP)
            mismatch(r, "focus is not a positive conjunction");
          return {LktSequent::with_focus(c.gamma, f.lhs(), c.polarity),
                  LktSequent::with_focus(c.gamma, f.rhs(), c.polarity)};
        } else if constexpr (std::is_same_v<T, lkt::OrP>) {
          const Formula &f = require_focus(c, r);
          if (f.kind() != FormulaKind::OrP)
            mismatch(r, "focus is not a positive disjunction");
          if (x.side != 0 && x.side != 1)
            mismatch(r, "side must be 0 or 1");
          return {LktSequent::with_focus(
              c.gamma, x.side == 0 ? f.lhs() : f.rhs(), c.polarity)};
        } else if constexpr (std::is_same_v<T, lkt::TopP>) {
          if (require_focus(c, r).kind() != FormulaKind::Top)
            mismatch(r, "focus is not Top");
          return {};
        } else if constexpr (std::is_same_v<T, lkt::Init> ||
                             std::is_same_v<T, lkt::InitTheory>) {
          if (!require_focus(c, r).is_literal())
            mismatch(r, "focus is not a literal");
          return {};
        } else if constexpr (std::is_same_v<T, lkt::Release>) {
          const Formula &f = require_focus(c, r);
          return {LktSequent::unfocused(c.gamma, c.polarity, {f})};
        } else if constexpr (std::is_same_v<T, lkt::AndN>) {
          const Formula &f = require_head(c, r);
          if (f.kind() != FormulaKind::AndN)
            mismatch(r, "head is not a negative conjunction");
          return {rest_with(c, {f.lhs()}), rest_with(c, {f.rhs()})};
        } else if constexpr (std::is_same_v<T, lkt::OrN>) {
          const Formula &f = require_head(c, r);
          if (f.kind() != FormulaKind::OrN)
            mismatch(r, "head is not a negative disjunction");
          return {rest_with(c, {f.lhs(), f.rhs()})};
        } else if constexpr (std::is_same_v<T, lkt::BottomN>) {
          if (require_head(c, r).kind() != FormulaKind::Bottom)
            mismatch(r, "head is not Bottom");
          return {rest_with(c, {})};
        } else if constexpr (std::is_same_v<T, lkt::Store>) {
          const Formula &f = require_head(c, r);
          LktSequent p = rest_with(c, {});
          p.gamma.insert(negate_formula(f));
          return {p};
        } else if constexpr (std::is_same_v<T, lkt::Polarize>) {
          require_quiescent(c, r, x.zone == lkt::Zone::Store);
          LktSequent p = c;
          if (x.zone == lkt::Zone::Store) {
            auto it = std::find(p.store.begin(), p.store.end(), x.lit);
            if (it == p.store.end())
              mismatch(r, "literal not in the store");
            p.store.erase(it);
          }
          p.polarity = c.polarity.with(x.lit);
          return {p};
        } else if constexpr (std::is_same_v<T, lkt::Decide>) {
          require_quiescent(c, r, false);
          return {LktSequent::with_focus(c.gamma, x.positive, c.polarity)};
        } else if constexpr (std::is_same_v<T, lkt::TheoryClose>) {
          require_quiescent(c, r, false);
          return {};
        } else if constexpr (std::is_same_v<T, lkt::AnalyticCut>) {
          require_quiescent(c, r, true);
          LktSequent a = c, b = c;
          a.gamma.insert(Formula::lit(x.lit));
          b.gamma.insert(Formula::lit(~x.lit));
          return {a, b};
        } else {
          static_assert(std::is_same_v<T, lkt::GeneralCut>);
          require_quiescent(c, r, false);
          LktSequent a = c, b = c;
          std::vector<Literal> negs;
          for (Literal l : x.lits) {
            a.gamma.insert(Formula::lit(l));
            negs.push_back(~l);
          }
          b.gamma.insert(or_spine(negs));
          return {a, b};
        }
      },
      r);
}

CheckResult check_lkt_rule(const LktSequent &c, const LktRule &r,
                           const std::vector<LktSequent> &premises,
                           const Theory &theory) {
  std::vector<LktSequent> expected;
  try {
    expected = expected_lkt_premises(c, r);
  } catch (const std::invalid_argument &e) {
    return CheckResult::fail(e.what());
  } catch (const PolarityConflict &e) {
    return CheckResult::fail(rule_name(r) + ": " + e.what());
  }
  if (expected.size() != premises.size())
    return CheckResult::fail(rule_name(r) + ": expected " +
                             std::to_string(expected.size()) + " premises, got " +
                             std::to_string(premises.size()));
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!(expected[i] == premises[i]))
      return CheckResult::fail(rule_name(r) + ": premise " + std::to_string(i) +
                               " is " + to_string(premises[i]) + ", expected " +
                               to_string(expected[i]));

  auto fail = [&](const std::string &why) {
    return CheckResult::fail(rule_name(r) + ": " + why);
  };
  return std::visit(
      [&](const auto &x) -> CheckResult {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, lkt::Init>) {
          Literal p = c.focus->literal();
          if (!c.polarity.contains(p))
            return fail(to_string(p) + " is not positive");
          if (!c.gamma.contains(*c.focus))
            return fail(to_string(p) + " is not in the context");
        } else if constexpr (std::is_same_v<T, lkt::InitTheory>) {
          Literal p = c.focus->literal();
          if (!c.polarity.contains(p))
            return fail(to_string(p) + " is not positive");
          if (!inconsistent(theory, c.gamma.atomic().with(~p)))
            return fail("context with " + to_string(~p) + " is consistent");
        } else if constexpr (std::is_same_v<T, lkt::Release>) {
          if (classify(*c.focus, c.polarity) != Polarity::Negative)
            return fail("focus " + to_string(*c.focus) + " is not negative");
        } else if constexpr (std::is_same_v<T, lkt::Store>) {
          const Formula &f = c.delta.front();
          if (!f.is_literal() &&
              classify(f, c.polarity) != Polarity::Positive)
            return fail("head " + to_string(f) +
                        " is neither positive nor a literal");
        } else if constexpr (std::is_same_v<T, lkt::Polarize>) {
          if (x.zone == lkt::Zone::Atom) {
            if (c.polarity.contains(x.lit))
              return fail("(atom form) " + to_string(x.lit) +
                          " is already polarized");
            if (!c.gamma.mentions(x.lit.atom()))
              return fail("(atom form) atom of " + to_string(x.lit) +
                          " does not occur in the context");
          }
        } else if constexpr (std::is_same_v<T, lkt::Decide>) {
          if (classify(x.positive, c.polarity) != Polarity::Positive)
            return fail(to_string(x.positive) + " is not positive");
          if (!c.gamma.contains(negate_formula(x.positive)))
            return fail("negation of " + to_string(x.positive) +
                        " is not in the context");
        } else if constexpr (std::is_same_v<T, lkt::TheoryClose>) {
          if (!inconsistent(theory, c.gamma.atomic()))
            return fail("atomic context is consistent");
        } else if constexpr (std::is_same_v<T, lkt::AnalyticCut>) {
          if (!c.gamma.mentions(x.lit.atom()))
            return fail("atom of " + to_string(x.lit) +
                        " does not occur in the context");
        }
        return CheckResult::pass();
      },
      r);
}

namespace {

CheckResult check_subtree(const LktNode &root, const Theory &theory,
                          bool require_complete) {
  std::vector<const LktNode *> stack{&root};
  while (!stack.empty()) {
    const LktNode *n = stack.back();
    stack.pop_back();
    if (n->open()) {
      if (require_complete)
        return CheckResult::fail("open leaf " + to_string(n->sequent));
      continue;
    }
    std::vector<LktSequent> premises;
    for (const LktNode &child : n->children)
      premises.push_back(child.sequent);
    if (auto r = check_lkt_rule(n->sequent, *n->rule, premises, theory); !r)
      return CheckResult::fail(r.reason + " at " + to_string(n->sequent));
    for (const LktNode &child : n->children)
      stack.push_back(&child);
  }
  return CheckResult::pass();
}

} // namespace

CheckResult check_lkt_tree(const LktNode &tree, const Theory &theory,
                           bool require_complete, bool parallel) {
  if (!parallel || tree.open() || tree.children.size() < 2)
    return check_subtree(tree, theory, require_complete);
  std::vector<LktSequent> premises;
  for (const LktNode &child : tree.children)
    premises.push_back(child.sequent);
  if (auto r = check_lkt_rule(tree.sequent, *tree.rule, premises, theory); !r)
    return r;
  std::vector<std::future<CheckResult>> jobs;
  for (const LktNode &child : tree.children)
    jobs.push_back(std::async(std::launch::async, [&, c = &child] {
      return check_subtree(*c, theory, require_complete);
    }));
  CheckResult result;
  for (auto &job : jobs)
    if (auto r = job.get(); !r && result)
      result = r;
  return result;
}

std::size_t lkt_tree_size(const LktNode &tree) {
  std::size_t total = 0;
  std::vector<const LktNode *> stack{&tree};
  while (!stack.empty()) {
    const LktNode *n = stack.back();
    stack.pop_back();
    if (n->open())
      continue;
    ++total;
    bool cut = std::holds_alternative<lkt::GeneralCut>(*n->rule);
    for (std::size_t i = cut ? 1 : 0; i < n->children.size(); ++i)
      stack.push_back(&n->children[i]);
  }
  return total;
}

std::size_t lkt_node_count(const LktNode &tree) {
  std::size_t total = 0;
  std::vector<const LktNode *> stack{&tree};
  while (!stack.empty()) {
    const LktNode *n = stack.back();
    stack.pop_back();
    ++total;
    for (const LktNode &child : n->children)
      stack.push_back(&child);
  }
  return total;
}

bool lkt_is_complete(const LktNode &tree) {
  std::vector<const LktNode *> stack{&tree};
  while (!stack.empty()) {
    const LktNode *n = stack.back();
    stack.pop_back();
    if (n->open())
      return false;
    for (const LktNode &child : n->children)
      stack.push_back(&child);
  }
  return true;
}

} // namespace dpllt
