// Copyright 2026 The zkmsa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZKMSA_GADGETS_H_
#define ZKMSA_GADGETS_H_

#include "zkmsa/r1cs.h"

// Equality and boolean gadgets in the shape of the circomlib templates
// (IsZero, IsEqual, AND, OR, NOT). Every gadget has a fixed non-linear
// constraint cost:
//
//   IsZero 2, IsEqual 2, And 1, Or 1, Not 0
//
// And/Or/Not assume boolean inputs and add no booleanity checks; callers only
// feed them outputs of other gadgets.
namespace zkmsa::gadgets {

inline constexpr size_t kIsZeroCost = 2;
inline constexpr size_t kIsEqualCost = 2;
inline constexpr size_t kAndCost = 1;
inline constexpr size_t kOrCost = 1;
inline constexpr size_t kNotCost = 0;

// out = 1 if x = 0 else 0.
//   x * inv = 1 - out
//   x * out = 0
// with inv filled by the INV_OR_ZERO witness rule.
SignalId IsZero(CircuitBuilder& b, const LinearCombination& x);

// IsZero(lhs - rhs).
SignalId IsEqual(CircuitBuilder& b, const LinearCombination& lhs, const LinearCombination& rhs);

// out = x * y.
SignalId And(CircuitBuilder& b, SignalId x, SignalId y);

// out = x + y - x*y.
SignalId Or(CircuitBuilder& b, SignalId x, SignalId y);

// out = 1 - x, substituted into later constraints.
SignalId Not(CircuitBuilder& b, SignalId x);

}  // namespace zkmsa::gadgets

#endif  // ZKMSA_GADGETS_H_
