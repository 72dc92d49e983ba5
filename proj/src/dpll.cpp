//===- dpll.cpp - The DPLL(T) transition system -------------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/dpll.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpllt {

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string clause_text(const Clause &c) {
  std::string out;
  for (Literal l : c)
    out += to_string(l) + " ";
  return out + "0";
}

void require(bool condition, const char *step, const char *what) {
  if (!condition)
    throw SideConditionViolated(step, what);
}

const Clause &clause_at(const ClauseSet &clauses, std::size_t index,
                        const char *step) {
  require(index < clauses.count(), step, "clause index out of range");
  return clauses[index];
}

bool atoms_within(const LiteralSet &inner, const LiteralSet &outer) {
  return outer.includes(atoms(inner));
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Decides one entailment premise of an advanced rule; a budget overrun is
/// reported as a failed side condition rather than trusted.
void require_entailment(const ClauseSet &clauses, const Clause &clause,
                        const Theory &theory, std::size_t budget,
                        const char *step, const char *what) {
  std::optional<bool> verdict =
      certify_entailment(clauses, clause, theory, budget);
  if (!verdict)
    throw SideConditionViolated(step, std::string(what) +
                                          " (not certified within budget)");
  require(*verdict, step, what);
}

} // namespace

std::string step_name(const DpllStep &s) {
  static const char *names[] = {"Fail",   "Decide",          "Backtrack",
                                "UnitPropagate", "TheoryPropagate",
                                "TBackjump",     "TLearn", "TForget",
                                "Restart"};
  return names[s.index()];
}

bool is_basic(const DpllStep &s) { return s.index() <= 4; }

std::string to_string(const DpllStep &s) {
  return std::visit(
      overloaded{
          [](const step::Fail &f) { return "Fail(" + std::to_string(f.clause) + ")"; },
          [](const step::Decide &d) { return "Decide(" + to_string(d.lit) + ")"; },
          [](const step::Backtrack &b) {
            return "Backtrack(" + std::to_string(b.clause) + ")";
          },
          [](const step::UnitPropagate &u) {
            return "UnitPropagate(" + std::to_string(u.clause) + ", " +
                   to_string(u.lit) + ")";
          },
          [](const step::TheoryPropagate &t) {
            return "TheoryPropagate(" + to_string(t.lit) + ")";
          },
          [](const step::TBackjump &j) {
            return "TBackjump(" + std::to_string(j.clause) + ", " +
                   std::to_string(j.level) + ", " +
                   clause_text(j.backjump_clause) + ", " + to_string(j.lit) +
                   ")";
          },
          [](const step::TLearn &l) {
            return "TLearn(" + clause_text(l.clause) + ")";
          },
          [](const step::TForget &f) {
            return "TForget(" + std::to_string(f.clause) + ")";
          },
          [](const step::Restart &) { return std::string("Restart"); },
      },
      s);
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
  case Outcome::Sat:
    return "SAT";
  case Outcome::Unsat:
    return "UNSAT";
  case Outcome::Limit:
    return "UNKNOWN";
  }
  return "?";
}

ClauseSet negation_units(const Clause &clause) {
  ClauseSet units;
  for (Literal l : clause)
    units.push_back(Clause{~l});
  return units;
}

std::optional<bool> certify_entailment(const ClauseSet &clauses,
                                       const Clause &clause,
                                       const Theory &theory,
                                       std::size_t budget) {
  ClauseSet goal = clauses;
  for (const Clause &unit : negation_units(clause))
    goal.push_back(unit);
  RunResult result = run(goal, theory, budget);
  if (result.outcome == Outcome::Limit)
    return std::nullopt;
  return result.outcome == Outcome::Unsat;
}

DpllState apply_step(const DpllState &state, const DpllStep &s,
                     const Theory &theory, const EngineOptions &options) {
  if (state.unsat)
    throw StateAlreadyUnsat();
  const ClauseSet &phi = state.clauses;
  const LiteralSet assigned = forget(state.trail);

  return std::visit(
      overloaded{
          [&](const step::Fail &f) {
            const Clause &c = clause_at(phi, f.clause, "Fail");
            require(falsified(c, assigned), "Fail", "clause not falsified");
            require(state.trail.decision_count() == 0, "Fail",
                    "trail contains a decision literal");
            DpllState next;
            next.unsat = true;
            return next;
          },
          [&](const step::Decide &d) {
            require(atoms(phi).contains(d.lit), "Decide",
                    "literal does not occur in the clause set");
            require(assigned.unassigned(d.lit), "Decide",
                    "literal already assigned");
            DpllState next = state;
            next.trail.push(d.lit, true);
            return next;
          },
          [&](const step::Backtrack &b) {
            const Clause &c = clause_at(phi, b.clause, "Backtrack");
            require(falsified(c, assigned), "Backtrack",
                    "clause not falsified");
            std::size_t decisions = state.trail.decision_count();
            require(decisions > 0, "Backtrack", "no decision literal");
            std::size_t pos = state.trail.decision_position(decisions - 1);
            DpllState next{false, state.trail.prefix(pos), phi};
            next.trail.push(~state.trail[pos].lit, false);
            return next;
          },
          [&](const step::UnitPropagate &u) {
            const Clause &c = clause_at(phi, u.clause, "UnitPropagate");
            require(c.contains(u.lit), "UnitPropagate",
                    "literal not in clause");
            require(falsified(c.without(u.lit), assigned), "UnitPropagate",
                    "rest of clause not falsified");
            require(assigned.unassigned(u.lit), "UnitPropagate",
                    "literal already assigned");
            DpllState next = state;
            next.trail.push(u.lit, false);
            return next;
          },
          [&](const step::TheoryPropagate &t) {
            require(atoms(phi).contains(t.lit), "TheoryPropagate",
                    "literal does not occur in the clause set");
            require(assigned.unassigned(t.lit), "TheoryPropagate",
                    "literal already assigned");
            require(tc_entails(theory, assigned, t.lit), "TheoryPropagate",
                    "literal not entailed by the trail");
            DpllState next = state;
            next.trail.push(t.lit, false);
            return next;
          },
          [&](const step::TBackjump &j) {
            const Clause &c = clause_at(phi, j.clause, "TBackjump");
            require(falsified(c, assigned), "TBackjump",
                    "(1) conflict clause not falsified");
            require(j.level < state.trail.decision_count(), "TBackjump",
                    "no decision at the requested level");
            std::size_t pos = state.trail.decision_position(j.level);
            Trail kept = state.trail.prefix(pos);
            LiteralSet kept_set = forget(kept);
            require(falsified(j.backjump_clause, kept_set), "TBackjump",
                    "(2) backjump clause not falsified below the level");
            require(atoms_within(atoms(j.backjump_clause), atoms(phi)),
                    "TBackjump", "backjump clause mentions foreign atoms");
            require(kept_set.unassigned(j.lit), "TBackjump",
                    "(4) backjump literal assigned below the level");
            require(set_union(atoms(phi), atoms(assigned)).contains(j.lit),
                    "TBackjump", "(4) backjump literal is foreign");
            require_entailment(phi, j.backjump_clause.with(j.lit), theory,
                               options.lemma_budget, "TBackjump",
                               "(3) clauses do not entail backjump clause");
            DpllState next{false, std::move(kept), phi};
            next.trail.push(j.lit, false);
            return next;
          },
          [&](const step::TLearn &l) {
            require(atoms_within(atoms(l.clause),
                                 set_union(atoms(phi), atoms(assigned))),
                    "TLearn", "clause mentions foreign atoms");
            require_entailment(phi, l.clause, theory, options.lemma_budget,
                               "TLearn", "clause not entailed");
            DpllState next = state;
            next.clauses.push_back(l.clause);
            return next;
          },
          [&](const step::TForget &f) {
            const Clause &c = clause_at(phi, f.clause, "TForget");
            ClauseSet rest = phi.without(f.clause);
            require_entailment(rest, c, theory, options.lemma_budget,
                               "TForget",
                               "clause not entailed by the others");
            DpllState next{false, state.trail, std::move(rest)};
            return next;
          },
          [&](const step::Restart &) {
            return DpllState{false, Trail{}, phi};
          },
      },
      s);
}

std::optional<DpllStep> default_strategy_next(const DpllState &state,
                                              const Theory &theory,
                                              const EngineOptions &options) {
  if (state.unsat)
    return std::nullopt;
  const ClauseSet &phi = state.clauses;
  const LiteralSet assigned = forget(state.trail);
  const bool no_decisions = state.trail.decision_count() == 0;

  for (std::size_t i = 0; i < phi.count(); ++i)
    if (falsified(phi[i], assigned)) {
      if (no_decisions)
        return step::Fail{i};
      return step::Backtrack{i};
    }

  bool all_satisfied =
      std::all_of(phi.begin(), phi.end(),
                  [&](const Clause &c) { return satisfied(c, assigned); });
  if (all_satisfied && !inconsistent(theory, assigned))
    return std::nullopt;

  // A unit literal whose negation the theory already entails is left to
  // theory propagation, which then falsifies the clause. Propagating it
  // would make the trail theory-inconsistent without any falsified clause.
  for (std::size_t i = 0; i < phi.count(); ++i) {
    const Clause &c = phi[i];
    if (satisfied(c, assigned))
      continue;
    for (Literal l : c) {
      if (!assigned.unassigned(l) || !falsified(c.without(l), assigned))
        continue;
      if (tc_entails(theory, assigned, ~l))
        break;
      return step::UnitPropagate{i, l};
    }
  }

  LiteralSet candidates = atoms(phi);
  for (Literal l : candidates)
    if (assigned.unassigned(l) && tc_entails(theory, assigned, l))
      return step::TheoryPropagate{l};

  for (Literal l : candidates) {
    if (!l.positive() || !assigned.unassigned(l))
      continue;
    bool positive = true;
    if (options.phase_seed)
      positive = (mix(*options.phase_seed ^ mix(l.atom())) & 1u) == 0;
    return step::Decide{positive ? l : ~l};
  }
  return std::nullopt;
}

RunResult run(const ClauseSet &clauses, const Theory &theory,
              std::size_t step_limit, const EngineOptions &options) {
  RunResult result;
  DpllState state = DpllState::initial(clauses);
  for (std::size_t n = 0; n < step_limit; ++n) {
    std::optional<DpllStep> next =
        default_strategy_next(state, theory, options);
    if (!next) {
      LiteralSet model = forget(state.trail);
      bool satisfied_all =
          std::all_of(state.clauses.begin(), state.clauses.end(),
                      [&](const Clause &c) { return satisfied(c, model); });
      if (!satisfied_all || inconsistent(theory, model))
        throw std::logic_error("strategy stuck in a non-final state");
      result.outcome = Outcome::Sat;
      result.model = std::move(model);
      result.final_state = std::move(state);
      return result;
    }
    state = apply_step(state, *next, theory, options);
    result.trace.push_back(std::move(*next));
    if (state.unsat) {
      result.outcome = Outcome::Unsat;
      result.final_state = std::move(state);
      return result;
    }
  }
  result.outcome = Outcome::Limit;
  result.final_state = std::move(state);
  return result;
}

DpllState replay(const ClauseSet &clauses, const DpllTrace &trace,
                 const Theory &theory, const EngineOptions &options) {
  DpllState state = DpllState::initial(clauses);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    try {
      state = apply_step(state, trace[i], theory, options);
    } catch (const SideConditionViolated &e) {
      throw e.at(i);
    } catch (const StateAlreadyUnsat &) {
      throw SideConditionViolated(step_name(trace[i]),
                                  "state is already UNSAT", i);
    }
  }
  return state;
}

} // namespace dpllt
