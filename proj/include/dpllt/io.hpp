//===- io.hpp - Problem, trace and certificate text formats -------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Problem files:
//
//   # comment
//   p cnft <natoms> <nclauses>
//   a <id> eq|neq <c1> <c2>
//   <lit> ... <lit> 0
//
// Certificates list the proof tree in pre-order, one record per node:
//
//   lkdpll 1 | lkt 1
//   problem <digest of the canonical problem text>
//   nodes <n>
//   <sequent digest> <children> <rule> <parameters...>
//   ...
//   end
//
// The reader rebuilds every sequent from the problem and the rule tags, and
// rejects a record whose digest does not match the rebuilt sequent. Digests
// are 64-bit FNV-1a in hexadecimal.
//
//===----------------------------------------------------------------------===//
#pragma once

#include "dpllt/dpll.hpp"
#include "dpllt/lkdpll.hpp"
#include "dpllt/lkt.hpp"
#include "dpllt/sim1.hpp"
#include "dpllt/sim2.hpp"
#include "dpllt/theory.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dpllt {

struct Problem {
  ClauseSet clauses;
  TheoryAtomTable table;
};

/// Throws ParseError.
Problem parse_problem(std::string_view text);
/// Comment-free form with one declaration or clause per line.
std::string write_problem(const Problem &problem);
std::string problem_digest(const Problem &problem);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

std::string sequent_digest(const LkSequent &s);
std::string sequent_digest(const LktSequent &s);

enum class Calculus { LkDpll, Lkt };

struct CertificateHeader {
  Calculus calculus = Calculus::LkDpll;
  std::string problem;
  std::size_t nodes = 0;
};

/// Throws CertificateError.
CertificateHeader read_certificate_header(std::string_view text);

std::string write_certificate(const LkNode &tree,
                              const std::string &problem_digest);
std::string write_certificate(const LktNode &tree,
                              const std::string &problem_digest);

/// Rebuilds the tree below `root`. Throws CertificateError on malformed
/// records, digest mismatches, arity errors and truncation.
LkNode read_lk_certificate(std::string_view text, const LkSequent &root,
                           const std::string &problem_digest);
LktNode read_lkt_certificate(std::string_view text, const LktSequent &root,
                             const std::string &problem_digest);

/// Reads a formula in the Polish notation of to_string(Formula).
Formula parse_formula(std::string_view text);

/// One step per line: `fail i`, `decide l`, `backtrack i`, `unit i l`,
/// `tprop l`, `backjump i level l c1 .. ck 0`, `learn l1 .. lk 0`,
/// `forget i`, `restart`.
std::string write_trace(const DpllTrace &trace);
/// Throws ParseError.
DpllTrace parse_trace(std::string_view text);

std::string write_size_log(const std::vector<StepRecord> &log);
std::string write_size_log(const std::vector<TranslationRecord> &log);

} // namespace dpllt
