//===- core.cpp - Literals, clauses, clause sets and trails -------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <stdexcept>

namespace dpllt {

Literal Literal::from_int(int value) {
  if (value == 0)
    throw std::invalid_argument("0 is not a literal");
  return Literal(static_cast<Atom>(std::abs(value)), value > 0);
}

int Literal::to_int() const {
  int atom_id = static_cast<int>(atom());
  return positive() ? atom_id : -atom_id;
}

std::string to_string(Literal lit) { return std::to_string(lit.to_int()); }

//===----------------------------------------------------------------------===//
// LiteralSet
//===----------------------------------------------------------------------===//

LiteralSet::LiteralSet(std::initializer_list<Literal> lits)
    : LiteralSet(std::vector<Literal>(lits)) {}

LiteralSet::LiteralSet(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool LiteralSet::contains(Literal lit) const {
  return std::binary_search(lits_.begin(), lits_.end(), lit);
}

bool LiteralSet::insert(Literal lit) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), lit);
  if (it != lits_.end() && *it == lit)
    return false;
  lits_.insert(it, lit);
  return true;
}

bool LiteralSet::erase(Literal lit) {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), lit);
  if (it == lits_.end() || *it != lit)
    return false;
  lits_.erase(it);
  return true;
}

LiteralSet LiteralSet::with(Literal lit) const {
  LiteralSet copy = *this;
  copy.insert(lit);
  return copy;
}

bool LiteralSet::includes(const LiteralSet &other) const {
  return std::includes(lits_.begin(), lits_.end(), other.lits_.begin(),
                       other.lits_.end());
}

bool LiteralSet::has_complementary_pair() const {
  // A literal and its negation are adjacent in code order.
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i] == ~lits_[i - 1])
      return true;
  return false;
}

LiteralSet set_union(const LiteralSet &a, const LiteralSet &b) {
  std::vector<Literal> merged;
  merged.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(merged));
  return LiteralSet(std::move(merged));
}

std::string to_string(const LiteralSet &set) {
  std::string out = "{";
  bool first = true;
  for (Literal lit : set) {
    if (!first)
      out += ',';
    out += to_string(lit);
    first = false;
  }
  return out + "}";
}

std::size_t LiteralSetHash::operator()(const LiteralSet &set) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Literal lit : set) {
    h ^= lit.code();
    h *= 0x100000001b3ull;
  }
  return h;
}

//===----------------------------------------------------------------------===//
// Clause / ClauseSet
//===----------------------------------------------------------------------===//

bool Clause::contains(Literal lit) const {
  return std::find(lits_.begin(), lits_.end(), lit) != lits_.end();
}

std::size_t Clause::count(Literal lit) const {
  return static_cast<std::size_t>(std::count(lits_.begin(), lits_.end(), lit));
}

Clause Clause::without(Literal lit) const {
  std::vector<Literal> rest = lits_;
  auto it = std::find(rest.begin(), rest.end(), lit);
  if (it == rest.end())
    throw std::invalid_argument("literal " + to_string(lit) +
                                " does not occur in clause");
  rest.erase(it);
  return Clause(std::move(rest));
}

Clause Clause::with(Literal lit) const {
  std::vector<Literal> more = lits_;
  more.push_back(lit);
  return Clause(std::move(more));
}

std::vector<Literal> Clause::sorted() const {
  std::vector<Literal> copy = lits_;
  std::sort(copy.begin(), copy.end());
  return copy;
}

bool Clause::operator==(const Clause &other) const {
  if (lits_.size() != other.lits_.size())
    return false;
  if (lits_ == other.lits_)
    return true;
  return sorted() == other.sorted();
}

std::string to_string(const Clause &clause) {
  if (clause.empty())
    return "⊥";
  std::string out;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i)
      out += " v ";
    out += to_string(clause[i]);
  }
  return out;
}

std::size_t ClauseSet::size() const {
  std::size_t total = 0;
  for (const Clause &c : clauses_)
    total += c.size();
  return total;
}

ClauseSet ClauseSet::with(Clause clause) const {
  ClauseSet copy = *this;
  copy.push_back(std::move(clause));
  return copy;
}

ClauseSet ClauseSet::without(std::size_t index) const {
  ClauseSet copy = *this;
  copy.clauses_.erase(copy.clauses_.begin() +
                      static_cast<std::ptrdiff_t>(index));
  return copy;
}

ClauseSet ClauseSet::replaced(std::size_t index, Clause clause) const {
  ClauseSet copy = *this;
  copy.clauses_[index] = std::move(clause);
  return copy;
}

bool ClauseSet::contains_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause &c) { return c.empty(); });
}

bool ClauseSet::operator==(const ClauseSet &other) const {
  if (clauses_.size() != other.clauses_.size())
    return false;
  if (same_positions(other))
    return true;
  auto canonical = [](const ClauseSet &set) {
    std::vector<std::vector<Literal>> out;
    out.reserve(set.count());
    for (const Clause &c : set)
      out.push_back(c.sorted());
    std::sort(out.begin(), out.end());
    return out;
  };
  return canonical(*this) == canonical(other);
}

bool ClauseSet::same_positions(const ClauseSet &other) const {
  if (clauses_.size() != other.clauses_.size())
    return false;
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    if (!(clauses_[i] == other.clauses_[i]))
      return false;
  return true;
}

std::string to_string(const ClauseSet &clauses) {
  std::string out = "{";
  for (std::size_t i = 0; i < clauses.count(); ++i) {
    if (i)
      out += ", ";
    out += to_string(clauses[i]);
  }
  return out + "}";
}

LiteralSet atoms(const Clause &clause) {
  std::vector<Literal> lits;
  lits.reserve(2 * clause.size());
  for (Literal lit : clause) {
    lits.push_back(lit);
    lits.push_back(~lit);
  }
  return LiteralSet(std::move(lits));
}

LiteralSet atoms(const ClauseSet &clauses) {
  std::vector<Literal> lits;
  lits.reserve(2 * clauses.size());
  for (const Clause &c : clauses)
    for (Literal lit : c) {
      lits.push_back(lit);
      lits.push_back(~lit);
    }
  return LiteralSet(std::move(lits));
}

LiteralSet atoms(const LiteralSet &set) {
  std::vector<Literal> lits;
  lits.reserve(2 * set.size());
  for (Literal lit : set) {
    lits.push_back(lit);
    lits.push_back(~lit);
  }
  return LiteralSet(std::move(lits));
}

bool falsified(const Clause &clause, const LiteralSet &lits) {
  return std::all_of(clause.begin(), clause.end(),
                     [&](Literal l) { return lits.contains(~l); });
}

bool satisfied(const Clause &clause, const LiteralSet &lits) {
  return std::any_of(clause.begin(), clause.end(),
                     [&](Literal l) { return lits.contains(l); });
}

//===----------------------------------------------------------------------===//
// Trail
//===----------------------------------------------------------------------===//

std::size_t Trail::decision_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [](const TrailEntry &e) { return e.decision; }));
}

std::size_t Trail::decision_position(std::size_t k) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].decision && k-- == 0)
      return i;
  return entries_.size();
}

Trail Trail::prefix(std::size_t length) const {
  Trail out;
  out.entries_.assign(entries_.begin(),
                      entries_.begin() + static_cast<std::ptrdiff_t>(length));
  return out;
}

bool Trail::has_distinct_atoms() const {
  std::vector<Atom> seen;
  seen.reserve(entries_.size());
  for (const TrailEntry &e : entries_)
    seen.push_back(e.lit.atom());
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::string to_string(const Trail &trail) {
  std::string out;
  for (std::size_t i = 0; i < trail.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(trail[i].lit);
    if (trail[i].decision)
      out += "^d";
  }
  return out.empty() ? "∅" : out;
}

LiteralSet forget(const Trail &trail) {
  std::vector<Literal> lits;
  lits.reserve(trail.size());
  for (const TrailEntry &e : trail)
    lits.push_back(e.lit);
  return LiteralSet(std::move(lits));
}

std::vector<LiteralSet> backstrict(const Trail &trail) {
  std::vector<LiteralSet> points;
  LiteralSet prefix;
  for (const TrailEntry &e : trail) {
    if (e.decision)
      points.push_back(prefix.with(~e.lit));
    prefix.insert(e.lit);
  }
  return points;
}

std::vector<LiteralSet> backpoints(const Trail &trail) {
  std::vector<LiteralSet> points = backstrict(trail);
  points.push_back(forget(trail));
  return points;
}

} // namespace dpllt
