//===- theory.cpp - Black-box theory decision procedures ----------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/theory.hpp"

#include <numeric>

namespace dpllt {

UnknownAtom::UnknownAtom(Atom atom)
    : std::runtime_error("unknown atom " + std::to_string(atom)),
      atom_(atom) {}

std::uint32_t TheoryAtomTable::constant(const std::string &name) {
  auto [it, inserted] = constant_ids_.try_emplace(
      name, static_cast<std::uint32_t>(constants_.size()));
  if (inserted)
    constants_.push_back(name);
  return it->second;
}

bool TheoryAtomTable::declare(Atom atom, EqualityAtom payload) {
  if (atom > atom_count_)
    atom_count_ = atom;
  return payloads_.emplace(atom, payload).second;
}

bool TheoryAtomTable::declare(Atom atom, const std::string &lhs,
                              const std::string &rhs, bool is_equality) {
  if (payloads_.contains(atom))
    return false;
  return declare(atom, EqualityAtom{constant(lhs), constant(rhs), is_equality});
}

std::optional<EqualityAtom> TheoryAtomTable::payload(Atom atom) const {
  if (!known(atom))
    throw UnknownAtom(atom);
  auto it = payloads_.find(atom);
  if (it == payloads_.end())
    return std::nullopt;
  return it->second;
}

Verdict Theory::check(const LiteralSet &lits) const {
  if (!memoize_) {
    std::lock_guard lock(mutex_);
    ++queries_;
  } else {
    std::lock_guard lock(mutex_);
    ++queries_;
    auto it = memo_.find(lits);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  Verdict verdict = decide(lits);
  if (memoize_) {
    std::lock_guard lock(mutex_);
    memo_.emplace(lits, verdict);
  }
  return verdict;
}

std::size_t Theory::queries() const {
  std::lock_guard lock(mutex_);
  return queries_;
}

std::size_t Theory::cache_hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

Verdict EmptyTheory::decide(const LiteralSet &lits) const {
  return lits.has_complementary_pair() ? Verdict::Unsat : Verdict::Consistent;
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void merge(std::uint32_t a, std::uint32_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::uint32_t> parent_;
};

} // namespace

Verdict EqualityTheory::decide(const LiteralSet &lits) const {
  // Propositional atoms behave as in the empty theory.
  std::vector<Literal> propositional;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> equalities;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> disequalities;
  for (Literal lit : lits) {
    std::optional<EqualityAtom> payload = table_.payload(lit.atom());
    if (!payload) {
      propositional.push_back(lit);
      continue;
    }
    bool asserts_equal = payload->is_equality == lit.positive();
    (asserts_equal ? equalities : disequalities)
        .emplace_back(payload->lhs, payload->rhs);
  }
  if (LiteralSet(propositional).has_complementary_pair())
    return Verdict::Unsat;
  if (disequalities.empty())
    return Verdict::Consistent;

  UnionFind classes(table_.constants().size());
  for (auto [a, b] : equalities)
    classes.merge(a, b);
  for (auto [a, b] : disequalities)
    if (classes.find(a) == classes.find(b))
      return Verdict::Unsat;
  return Verdict::Consistent;
}

std::unique_ptr<Theory> make_theory(TheoryKind kind,
                                    const TheoryAtomTable &table) {
  if (kind == TheoryKind::Equality)
    return std::make_unique<EqualityTheory>(table);
  return std::make_unique<EmptyTheory>();
}

bool tc_entails(const Theory &theory, const LiteralSet &lits, Literal lit) {
  if (lits.contains(lit))
    return true;
  return theory.check(lits.with(~lit)) == Verdict::Unsat;
}

LiteralSet nsat(const Theory &theory, const LiteralSet &lits,
                const ClauseSet &clauses) {
  std::vector<Literal> entailed;
  for (Literal lit : atoms(clauses))
    if (tc_entails(theory, lits, lit))
      entailed.push_back(lit);
  return LiteralSet(std::move(entailed));
}

} // namespace dpllt
