//===- theory.hpp - Black-box theory decision procedures ----------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A theory is consulted only through satisfiability of literal sets. Two
// instances are provided: the empty theory, where a set is inconsistent iff
// it holds a complementary pair, and ground equality over uninterpreted
// constants, decided by union-find over the equalities followed by a scan of
// the disequalities.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/core.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dpllt {

enum class Verdict { Consistent, Unsat };

class UnknownAtom : public std::runtime_error {
public:
  explicit UnknownAtom(Atom atom);
  Atom atom() const { return atom_; }

private:
  Atom atom_;
};

/// Reading of an atom in the equality theory. A positive literal over an
/// `eq` atom asserts lhs = rhs; over a `neq` atom it asserts lhs != rhs.
struct EqualityAtom {
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  bool is_equality = true;
  bool operator==(const EqualityAtom &) const = default;
};

/// Maps every declared atom to its theory payload. Atoms declared without a
/// payload are propositional.
class TheoryAtomTable {
public:
  TheoryAtomTable() = default;
  explicit TheoryAtomTable(Atom atom_count) : atom_count_(atom_count) {}

  Atom atom_count() const { return atom_count_; }
  void set_atom_count(Atom count) { atom_count_ = count; }

  /// Interns a constant name.
  std::uint32_t constant(const std::string &name);
  const std::vector<std::string> &constants() const { return constants_; }

  /// Declares an equality atom; returns false if `atom` already has one.
  bool declare(Atom atom, EqualityAtom payload);
  bool declare(Atom atom, const std::string &lhs, const std::string &rhs,
               bool is_equality);

  bool known(Atom atom) const { return atom >= 1 && atom <= atom_count_; }
  /// The equality payload, or nullopt for a propositional atom. Throws
  /// UnknownAtom for undeclared atoms.
  std::optional<EqualityAtom> payload(Atom atom) const;
  bool has_theory_atoms() const { return !payloads_.empty(); }
  const std::map<Atom, EqualityAtom> &payloads() const { return payloads_; }

private:
  Atom atom_count_ = 0;
  std::vector<std::string> constants_;
  std::map<std::string, std::uint32_t> constant_ids_;
  std::map<Atom, EqualityAtom> payloads_;
};

/// Theory interface. `check` is memoized on the literal-set key and is safe
/// to call from several threads.
class Theory {
public:
  virtual ~Theory() = default;
  Theory() = default;
  Theory(const Theory &) = delete;
  Theory &operator=(const Theory &) = delete;

  Verdict check(const LiteralSet &lits) const;
  virtual std::string name() const = 0;

  std::size_t queries() const;
  std::size_t cache_hits() const;
  void set_memoization(bool enabled) { memoize_ = enabled; }

protected:
  virtual Verdict decide(const LiteralSet &lits) const = 0;

private:
  bool memoize_ = true;
  mutable std::mutex mutex_;
  mutable std::unordered_map<LiteralSet, Verdict, LiteralSetHash> memo_;
  mutable std::size_t queries_ = 0;
  mutable std::size_t hits_ = 0;
};

class EmptyTheory final : public Theory {
public:
  std::string name() const override { return "empty"; }

protected:
  Verdict decide(const LiteralSet &lits) const override;
};

class EqualityTheory final : public Theory {
public:
  explicit EqualityTheory(TheoryAtomTable table) : table_(std::move(table)) {}
  std::string name() const override { return "eq"; }
  const TheoryAtomTable &table() const { return table_; }

protected:
  Verdict decide(const LiteralSet &lits) const override;

private:
  TheoryAtomTable table_;
};

enum class TheoryKind { Empty, Equality };

std::unique_ptr<Theory> make_theory(TheoryKind kind,
                                    const TheoryAtomTable &table);

/// UNSAT iff the conjunction of the literals is inconsistent in the theory.
inline Verdict tc_unsat(const Theory &theory, const LiteralSet &lits) {
  return theory.check(lits);
}

inline bool inconsistent(const Theory &theory, const LiteralSet &lits) {
  return theory.check(lits) == Verdict::Unsat;
}

/// lits entails `lit` iff lits together with the negation of `lit` is
/// inconsistent.
bool tc_entails(const Theory &theory, const LiteralSet &lits, Literal lit);

/// The literals of atm(phi) entailed by `lits`.
LiteralSet nsat(const Theory &theory, const LiteralSet &lits,
                const ClauseSet &clauses);

} // namespace dpllt
