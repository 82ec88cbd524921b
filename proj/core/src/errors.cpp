/*
 * Copyright 2026 The cpl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cpl/errors.hpp"

namespace cpl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotALumping: return "NotALumping";
    case ErrorCode::NotMetzler: return "NotMetzler";
    case ErrorCode::BoundsInverted: return "BoundsInverted";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::NegativeInitial: return "NegativeInitial";
    case ErrorCode::TimeoutExceeded: return "TimeoutExceeded";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::ControlOutOfBounds: return "ControlOutOfBounds";
    case ErrorCode::NonAdmissibleControl: return "NonAdmissibleControl";
    case ErrorCode::NegativeState: return "NegativeState";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& what,
                           const std::optional<Location>& where) {
  std::string msg{to_string(code)};
  if (where) {
    msg += "(" + std::to_string(where->row + 1);
    if (where->col) msg += "," + std::to_string(*where->col + 1);
    msg += ")";
  }
  if (!what.empty()) msg += ": " + what;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what,
             std::optional<Location> where)
    : std::runtime_error(format_message(code, what, where)),
      code_(code),
      where_(where) {}

}  // namespace cpl
