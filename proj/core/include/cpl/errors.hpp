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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpl {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  NonFinite,
  NotSquare,
  RankDeficient,
  NotProper,
  NotALumping,
  NotMetzler,
  BoundsInverted,
  NegativeInput,
  NegativeInitial,
  TimeoutExceeded,
  DimensionTooLarge,
  ControlOutOfBounds,
  NonAdmissibleControl,
  NegativeState,
  GridMismatch,
  BudgetExceeded,
  ParseError,
  NonPositiveWeight,
  EmptyNetwork,
};

std::string_view to_string(ErrorCode code);

/// Zero-based (row, col) of the entry an error refers to. `col` is unset for
/// vector-valued locations (initial conditions, file lines).
struct Location {
  std::size_t row = 0;
  std::optional<std::size_t> col;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<Location> where = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Location>& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<Location> where_;
};

}  // namespace cpl
