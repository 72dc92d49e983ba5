//===- sim1.hpp - Growing LKDPLL proofs alongside DPLL(T) runs ----------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A session pairs a solver state with a partial proof tree whose open leaves
// are all labelled `D |- phi` for backtrack points D of the trail. Each step
// is applied to the state and mirrored on the tree, and the size of every
// grafted subtree is logged next to the bound it must respect.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/dpll.hpp"
#include "dpllt/lkdpll.hpp"

#include <string>
#include <vector>

namespace dpllt {

struct StepRecord {
  std::size_t step_index = 0;
  std::string kind;
  bool basic = true;
  std::size_t leaves_replaced = 0;
  /// Largest counted size among the subtrees grafted at this step.
  std::size_t max_leaf_size = 0;
  std::size_t total_size = 0;
  /// size(phi)+1 for basic steps and size(phi)+3 for advanced ones, phi
  /// being the clause set of the state the step starts from.
  std::size_t bound = 0;
  /// Same bound with the conflict clause left out of phi (Fail and
  /// Backtrack only; equal to `bound` otherwise).
  std::size_t strict_bound = 0;

  bool within_bound() const { return max_leaf_size <= bound; }
};

struct SimOptions {
  EngineOptions engine;
  bool check_correspondence = true;
};

struct SimSession {
  DpllState state;
  LkNode tree;
  const Theory *theory = nullptr;
  SimOptions options;
  std::vector<StepRecord> log;
  std::size_t steps = 0;
};

SimSession init_session(const ClauseSet &clauses, const Theory &theory,
                        const SimOptions &options = {});

/// Every open leaf is `D |- phi` with D a backtrack point of the trail and
/// phi the state's clauses; an UNSAT state requires a complete tree.
bool correspondence_holds(const LkNode &tree, const DpllState &state);

/// Applies a basic step to the session's state and extends the tree.
void extend_basic(SimSession &session, const DpllStep &s);
/// Applies TBackjump, TLearn, TForget or Restart and extends all the
/// affected open leaves at once.
void extend_advanced(SimSession &session, const DpllStep &s);
/// Dispatches on the step kind.
void extend(SimSession &session, const DpllStep &s);

/// Complete proof of `|- goal` obtained by solving goal and simulating the
/// run. Throws LemmaDischargeFailed if goal is satisfiable or the budget is
/// exhausted.
LkNode discharge_theory_lemma(const ClauseSet &goal, const Theory &theory,
                              std::size_t budget);

struct LkCertificate {
  LkNode tree;
  std::vector<StepRecord> log;
};

/// Simulates a whole UNSAT trace; the result proves `|- clauses`.
LkCertificate certify_unsat(const ClauseSet &clauses, const DpllTrace &trace,
                            const Theory &theory,
                            const SimOptions &options = {});

} // namespace dpllt
