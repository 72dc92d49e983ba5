//===- errors.hpp - Exception types and checker results -----------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dpllt {

/// A rewrite step whose side condition does not hold in the current state.
class SideConditionViolated : public std::runtime_error {
public:
  SideConditionViolated(std::string step, std::string condition,
                        std::optional<std::size_t> index = std::nullopt);

  const std::string &step() const { return step_; }
  const std::string &condition() const { return condition_; }
  std::optional<std::size_t> index() const { return index_; }
  SideConditionViolated at(std::size_t index) const {
    return SideConditionViolated(step_, condition_, index);
  }

private:
  std::string step_;
  std::string condition_;
  std::optional<std::size_t> index_;
};

class StateAlreadyUnsat : public std::runtime_error {
public:
  StateAlreadyUnsat() : std::runtime_error("state is already UNSAT") {}
};

class NoMatchingLeaf : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LemmaDischargeFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CorrespondenceViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class EliminationFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PolarityConflict : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class CertificateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Outcome of a checker: `reason` names the first failed condition.
struct CheckResult {
  bool ok = true;
  std::string reason;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

} // namespace dpllt
