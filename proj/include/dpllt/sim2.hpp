//===- sim2.hpp - Translating LKDPLL proofs into LK(T)p -----------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A clause C is carried in LK(T)p by a negative-disjunction spine C' whose
// literals include those of C; the others are garbage and must have their
// negation declared positive. Resolve steps never touch C', they only
// polarize, so garbage accumulates as the LKDPLL proof goes up.
//
// Subsume has no LK(T)p counterpart: the subsumed spine stays in Gamma as an
// "extra" formula, which is harmless because it is never focused on again.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/lkdpll.hpp"
#include "dpllt/lkt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpllt {

struct ClauseEncoding {
  Clause clause;
  Formula formula;
  LiteralSet garbage;
};

/// Fresh encoding: the spine of C's distinct literals in sorted order, or
/// Bottom for the empty clause. Fresh encodings carry no garbage.
ClauseEncoding encode_clause(const Clause &clause, const PolaritySet &polarity);

/// `encoded` is a spine containing every literal of `clause`, and every
/// other literal of the spine has its negation in `polarity`.
bool p_corresponds(const Formula &encoded, const Clause &clause,
                   const PolaritySet &polarity);

struct SeqCorrespondence {
  LkSequent source;
  /// Unfocused, with empty Delta and store.
  LktSequent target;
  /// pairing[i] encodes source.goal[i].
  std::vector<Formula> pairing;
  std::vector<Formula> extras;
};

/// Checks every condition of the correspondence literally: Gamma is the
/// context literals plus the pairing plus the extras, each pairing
/// corresponds to its clause, the context entails every positive literal,
/// and each extra holds a literal the context entails.
CheckResult correspondence_holds(const SeqCorrespondence &corr,
                                 const Theory &theory);

/// Correspondence for `context |- goal` built from fresh encodings and an
/// empty polarity set.
SeqCorrespondence initial_correspondence(const LkSequent &sequent);

struct TranslationStep {
  /// The emitted derivation; its open leaves, in pre-order, are the
  /// translations of the LKDPLL premises.
  LktNode partial;
  /// One entry per LKDPLL premise; nullopt when the translation closed that
  /// branch by itself.
  std::vector<std::optional<SeqCorrespondence>> premises;
  /// For each open leaf of `partial` in pre-order, the premise it stands for.
  std::vector<std::size_t> leaf_premise;
};

/// Translates one base rule or cut instance. Throws CorrespondenceViolation
/// when `corr` does not describe `node.sequent`, and std::invalid_argument on
/// dashed rules.
TranslationStep translate_step(const LkNode &node,
                               const SeqCorrespondence &corr,
                               const Theory &theory);

struct TranslationRecord {
  std::string rule;
  std::size_t emitted = 0;
  /// Formula count of the corresponding LK(T)p sequent.
  std::size_t formula_count = 0;
  /// Total number of connectives and literals in that sequent.
  std::size_t symbol_count = 0;

  std::size_t bound() const { return formula_count + 4; }
  bool within_bound() const { return emitted <= bound(); }
};

struct LktTranslation {
  LktNode proof;
  std::vector<TranslationRecord> log;
  std::size_t polarize_count = 0;
};

struct TranslateOptions {
  /// Re-check every premise correspondence as it is produced.
  bool check_correspondence = true;
};

/// Translates a complete LKDPLL proof. Dashed rules are first eliminated
/// by permuting them through cuts. The result proves the initial
/// correspondence of the root sequent.
LktTranslation translate_proof(const LkNode &tree, const Theory &theory,
                               const TranslateOptions &options = {});

} // namespace dpllt
