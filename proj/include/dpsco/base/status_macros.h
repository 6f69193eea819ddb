//
// Copyright 2026 The DPSCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPSCO_BASE_STATUS_MACROS_H_
#define DPSCO_BASE_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPSCO_STATUS_CONCAT_INNER_(x, y) x##y
#define DPSCO_STATUS_CONCAT_(x, y) DPSCO_STATUS_CONCAT_INNER_(x, y)

// Returns early from the enclosing function if `expr` yields a non-OK status.
#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _dpsco_status = (expr); \
    if (!_dpsco_status.ok()) {                 \
      return _dpsco_status;                    \
    }                                          \
  } while (0)

#define DPSCO_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) {                                    \
    return std::move(statusor).status();                   \
  }                                                        \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns the value to
// `lhs` or returns the error from the enclosing function.
#define ASSIGN_OR_RETURN(lhs, rexpr) \
  DPSCO_ASSIGN_OR_RETURN_IMPL_(      \
      DPSCO_STATUS_CONCAT_(_dpsco_statusor_, __LINE__), lhs, rexpr)

#endif  // DPSCO_BASE_STATUS_MACROS_H_
