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

#include "zkmsa/gadgets.h"

namespace zkmsa::gadgets {

SignalId IsZero(CircuitBuilder& b, const LinearCombination& x) {
  // INV_OR_ZERO needs a concrete wire to read from.
  const SignalId xs = x.AsSingleSignal().value_or(SignalId::One());
  const SignalId x_wire = xs.IsConstant() ? b.Assign(x) : xs;

  const SignalId inv = b.InvOrZero(x_wire);
  const SignalId prod = b.Product(x_wire, inv);
  const SignalId out = b.Assign(LinearCombination::Constant(1) - prod);

  b.Enforce(x, inv, LinearCombination::Constant(1) - out);
  b.Enforce(x, out, LinearCombination());
  return out;
}

SignalId IsEqual(CircuitBuilder& b, const LinearCombination& lhs, const LinearCombination& rhs) {
  return IsZero(b, lhs - rhs);
}

SignalId And(CircuitBuilder& b, SignalId x, SignalId y) {
  const SignalId out = b.Product(x, y);
  b.Enforce(x, y, out);
  return out;
}

SignalId Or(CircuitBuilder& b, SignalId x, SignalId y) {
  const SignalId prod = b.Product(x, y);
  b.Enforce(x, y, prod);
  return b.Assign(LinearCombination(x) + y - prod);
}

SignalId Not(CircuitBuilder& b, SignalId x) {
  return b.Assign(LinearCombination::Constant(1) - x);
}

}  // namespace zkmsa::gadgets
