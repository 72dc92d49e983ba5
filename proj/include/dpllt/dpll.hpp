//===- dpll.hpp - The DPLL(T) transition system -------------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// States are `trail || clauses` or UNSAT. Every step carries enough
// parameters to determine its successor, so a trace can be replayed and
// re-validated without the strategy that produced it.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/core.hpp"
#include "dpllt/errors.hpp"
#include "dpllt/theory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dpllt {

namespace step {
struct Fail {
  std::size_t clause = 0;
  bool operator==(const Fail &) const = default;
};
struct Decide {
  Literal lit;
  bool operator==(const Decide &) const = default;
};
struct Backtrack {
  std::size_t clause = 0;
  bool operator==(const Backtrack &) const = default;
};
struct UnitPropagate {
  std::size_t clause = 0;
  Literal lit;
  bool operator==(const UnitPropagate &) const = default;
};
struct TheoryPropagate {
  Literal lit;
  bool operator==(const TheoryPropagate &) const = default;
};
/// Jumps back to the `level`-th decision (0-based): the trail keeps the
/// entries strictly before it and then receives `lit`.
struct TBackjump {
  std::size_t clause = 0;
  std::size_t level = 0;
  Clause backjump_clause;
  Literal lit;
  bool operator==(const TBackjump &) const = default;
};
struct TLearn {
  Clause clause;
  bool operator==(const TLearn &) const = default;
};
struct TForget {
  std::size_t clause = 0;
  bool operator==(const TForget &) const = default;
};
struct Restart {
  bool operator==(const Restart &) const = default;
};
} // namespace step

using DpllStep =
    std::variant<step::Fail, step::Decide, step::Backtrack,
                 step::UnitPropagate, step::TheoryPropagate, step::TBackjump,
                 step::TLearn, step::TForget, step::Restart>;
using DpllTrace = std::vector<DpllStep>;

std::string step_name(const DpllStep &s);
std::string to_string(const DpllStep &s);
/// True for Fail, Decide, Backtrack, UnitPropagate and TheoryPropagate.
bool is_basic(const DpllStep &s);

struct DpllState {
  bool unsat = false;
  Trail trail;
  ClauseSet clauses;

  static DpllState initial(ClauseSet clauses) {
    return DpllState{false, Trail{}, std::move(clauses)};
  }
  bool operator==(const DpllState &) const = default;
};

struct EngineOptions {
  /// Step budget for each recursive solve that certifies an entailment.
  std::size_t lemma_budget = 10000;
  /// When set, decisions pick their phase from a hash of (seed, atom)
  /// instead of always trying the positive literal first.
  std::optional<std::uint64_t> phase_seed;
};

/// Clauses stating the negation of `clause`: one unit per literal.
ClauseSet negation_units(const Clause &clause);

/// Decides whether `clauses` entails `clause` modulo the theory by running
/// the basic solver on clauses plus the negation of clause. Returns nullopt
/// when the budget runs out.
std::optional<bool> certify_entailment(const ClauseSet &clauses,
                                       const Clause &clause,
                                       const Theory &theory,
                                       std::size_t budget);

DpllState apply_step(const DpllState &state, const DpllStep &s,
                     const Theory &theory, const EngineOptions &options = {});

std::optional<DpllStep>
default_strategy_next(const DpllState &state, const Theory &theory,
                      const EngineOptions &options = {});

enum class Outcome { Sat, Unsat, Limit };
std::string to_string(Outcome outcome);

struct RunResult {
  Outcome outcome = Outcome::Limit;
  LiteralSet model;
  DpllTrace trace;
  DpllState final_state;
};

RunResult run(const ClauseSet &clauses, const Theory &theory,
              std::size_t step_limit, const EngineOptions &options = {});

/// Folds apply_step over the trace from the initial state. A violation is
/// rethrown with the index of the failing step.
DpllState replay(const ClauseSet &clauses, const DpllTrace &trace,
                 const Theory &theory, const EngineOptions &options = {});

} // namespace dpllt
