//===- core.hpp - Literals, clauses, clause sets and trails -------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Value types shared by the solver, the proof calculi and the simulations.
//
// Atoms are interned integers (1-based, matching the problem file). A literal
// packs its atom and sign into one word so that equality and ordering are
// single integer comparisons; in the induced order a literal and its
// negation are adjacent.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace dpllt {

using Atom = std::uint32_t;

class Literal {
public:
  constexpr Literal() = default;
  constexpr Literal(Atom atom, bool positive)
      : code_((atom << 1) | (positive ? 0u : 1u)) {}

  /// Signed-integer form used by the text formats: `3` is atom 3, `-3` its
  /// negation. Zero is not a literal.
  static Literal from_int(int value);
  int to_int() const;

  constexpr Atom atom() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return code_; }

  constexpr Literal operator~() const {
    Literal flipped;
    flipped.code_ = code_ ^ 1u;
    return flipped;
  }

  constexpr auto operator<=>(const Literal &) const = default;

private:
  std::uint32_t code_ = 0;
};

constexpr Literal negate(Literal lit) { return ~lit; }

std::string to_string(Literal lit);

/// A finite set of literals kept as a sorted vector without duplicates. It
/// is the representation of contexts, forgotten trails and theory queries.
class LiteralSet {
public:
  LiteralSet() = default;
  LiteralSet(std::initializer_list<Literal> lits);
  explicit LiteralSet(std::vector<Literal> lits);

  bool contains(Literal lit) const;
  /// True when neither `lit` nor its negation is a member.
  bool unassigned(Literal lit) const {
    return !contains(lit) && !contains(~lit);
  }
  bool insert(Literal lit);
  bool erase(Literal lit);
  LiteralSet with(Literal lit) const;
  bool includes(const LiteralSet &other) const;
  /// True when some literal occurs together with its negation.
  bool has_complementary_pair() const;

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const std::vector<Literal> &literals() const { return lits_; }

  bool operator==(const LiteralSet &) const = default;
  auto operator<=>(const LiteralSet &) const = default;

private:
  std::vector<Literal> lits_;
};

LiteralSet set_union(const LiteralSet &a, const LiteralSet &b);
std::string to_string(const LiteralSet &set);

struct LiteralSetHash {
  std::size_t operator()(const LiteralSet &set) const;
};

/// A clause is a multiset of literals. Storage order is kept (it fixes the
/// shape of sequent-calculus encodings) but never observed by equality.
class Clause {
public:
  Clause() = default;
  Clause(std::initializer_list<Literal> lits) : lits_(lits) {}
  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {}

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal lit) const;
  std::size_t count(Literal lit) const;
  const Literal &operator[](std::size_t i) const { return lits_[i]; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const std::vector<Literal> &literals() const { return lits_; }

  /// The clause with one occurrence of `lit` removed; `lit` must occur.
  Clause without(Literal lit) const;
  /// The clause with `lit` appended.
  Clause with(Literal lit) const;
  /// Literals in sorted order, the canonical form used for comparisons.
  std::vector<Literal> sorted() const;

  bool operator==(const Clause &other) const;

private:
  std::vector<Literal> lits_;
};

std::string to_string(const Clause &clause);

/// A finite multiset of clauses. `size()` is the total number of literal
/// occurrences, the measure used by every size bound; `count()` is the number
/// of clauses.
class ClauseSet {
public:
  ClauseSet() = default;
  ClauseSet(std::initializer_list<Clause> clauses) : clauses_(clauses) {}
  explicit ClauseSet(std::vector<Clause> clauses)
      : clauses_(std::move(clauses)) {}

  std::size_t size() const;
  std::size_t count() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const Clause &operator[](std::size_t i) const { return clauses_[i]; }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }
  const std::vector<Clause> &clauses() const { return clauses_; }

  void push_back(Clause clause) { clauses_.push_back(std::move(clause)); }
  ClauseSet with(Clause clause) const;
  ClauseSet without(std::size_t index) const;
  ClauseSet replaced(std::size_t index, Clause clause) const;
  bool contains_empty_clause() const;

  /// Multiset equality over clauses that are themselves multisets.
  bool operator==(const ClauseSet &other) const;
  /// Position-wise equality: clause i equals clause i for every i.
  bool same_positions(const ClauseSet &other) const;

private:
  std::vector<Clause> clauses_;
};

std::string to_string(const ClauseSet &clauses);

/// atm(C): the literals of the clause together with their negations.
LiteralSet atoms(const Clause &clause);
/// atm(phi): negation-closed set of literals occurring in the clause set.
LiteralSet atoms(const ClauseSet &clauses);
/// Negation closure of an arbitrary literal set.
LiteralSet atoms(const LiteralSet &lits);

/// Every literal of `clause` has its negation in `lits`.
bool falsified(const Clause &clause, const LiteralSet &lits);
/// Some literal of `clause` is in `lits`.
bool satisfied(const Clause &clause, const LiteralSet &lits);

struct TrailEntry {
  Literal lit;
  bool decision = false;
  bool operator==(const TrailEntry &) const = default;
};

/// An annotated model: literals in assignment order, decisions flagged.
class Trail {
public:
  Trail() = default;
  Trail(std::initializer_list<TrailEntry> entries) : entries_(entries) {}

  void push(Literal lit, bool decision) { entries_.push_back({lit, decision}); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const TrailEntry &operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<TrailEntry> &entries() const { return entries_; }

  std::size_t decision_count() const;
  /// Position of the `k`-th decision (0-based), or size() if absent.
  std::size_t decision_position(std::size_t k) const;
  /// The first `length` entries.
  Trail prefix(std::size_t length) const;
  /// No atom occurs twice, in either polarity.
  bool has_distinct_atoms() const;

  bool operator==(const Trail &) const = default;

private:
  std::vector<TrailEntry> entries_;
};

std::string to_string(const Trail &trail);

/// Erases decision annotations.
LiteralSet forget(const Trail &trail);

/// The backtrack points strictly below the trail: one model per decision
/// literal, made of the forgotten prefix before the decision plus the
/// decision's negation. Listed in decision order.
std::vector<LiteralSet> backstrict(const Trail &trail);

/// backstrict(trail) followed by forget(trail); always 1 + #decisions long.
std::vector<LiteralSet> backpoints(const Trail &trail);

} // namespace dpllt

template <> struct std::hash<dpllt::Literal> {
  std::size_t operator()(dpllt::Literal lit) const noexcept {
    return std::hash<std::uint32_t>{}(lit.code());
  }
};
