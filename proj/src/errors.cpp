//===- errors.cpp - Exception types -------------------------------------===//
//
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "dpllt/errors.hpp"

namespace dpllt {

static std::string describe(const std::string &step,
                            const std::string &condition,
                            std::optional<std::size_t> index) {
  std::string out = step + ": " + condition;
  if (index)
    out = "step " + std::to_string(*index) + " (" + out + ")";
  return out;
}

SideConditionViolated::SideConditionViolated(std::string step,
                                             std::string condition,
                                             std::optional<std::size_t> index)
    : std::runtime_error(describe(step, condition, index)),
      step_(std::move(step)), condition_(std::move(condition)),
      index_(index) {}

} // namespace dpllt
