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

#ifndef ZKMSA_R1CS_H_
#define ZKMSA_R1CS_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "zkmsa/field.h"

namespace zkmsa {

// Index of a circuit wire. Index 0 is the constant-one signal.
struct SignalId {
  uint32_t index = 0;

  static constexpr SignalId One() { return SignalId{0}; }
  bool IsConstant() const { return index == 0; }
  auto operator<=>(const SignalId&) const = default;
};

struct Term {
  FieldElement coeff;
  SignalId signal;

  bool operator==(const Term&) const = default;
};

// Sum of coeff * signal, kept sorted by signal with duplicates merged and
// zero coefficients dropped. The constant is the coefficient of SignalId 0.
class LinearCombination {
 public:
  LinearCombination() = default;
  LinearCombination(SignalId s);  // NOLINT: 1 * s
  explicit LinearCombination(std::vector<Term> terms);

  static LinearCombination Constant(const FieldElement& c);
  static LinearCombination Constant(int64_t c) { return Constant(EncodeSigned(c)); }

  void AddTerm(const FieldElement& coeff, SignalId s);

  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  // True when no term references a signal other than the constant.
  bool IsConstant() const;
  // Some(s) when the combination is exactly 1 * s for a non-constant s.
  std::optional<SignalId> AsSingleSignal() const;

  FieldElement Evaluate(std::span<const FieldElement> values) const;

  friend LinearCombination operator+(const LinearCombination& a, const LinearCombination& b);
  friend LinearCombination operator-(const LinearCombination& a, const LinearCombination& b);
  friend LinearCombination operator*(const LinearCombination& a, const FieldElement& k);
  friend LinearCombination operator*(const FieldElement& k, const LinearCombination& a) {
    return a * k;
  }
  LinearCombination operator-() const;

  bool operator==(const LinearCombination&) const = default;

 private:
  std::vector<Term> terms_;
};

// Read-only view of one stored constraint <a,w> * <b,w> = <c,w>.
struct ConstraintView {
  std::span<const Term> a;
  std::span<const Term> b;
  std::span<const Term> c;
  bool nonlinear = false;
};

// A constraint is non-linear iff both a and b mention a non-constant signal.
bool IsNonlinear(std::span<const Term> a, std::span<const Term> b);

enum class Visibility { kPublicInput, kPrivateInput, kInternal };

struct WitnessStep {
  enum class Rule { kLinear, kProduct, kInvOrZero };

  SignalId target;
  Rule rule = Rule::kLinear;
  LinearCombination lc;  // kLinear
  SignalId x;            // kProduct, kInvOrZero
  SignalId y;            // kProduct

  static WitnessStep Linear(SignalId target, LinearCombination lc);
  static WitnessStep Product(SignalId target, SignalId x, SignalId y);
  static WitnessStep InvOrZero(SignalId target, SignalId x);
};

struct InputSlot {
  std::string name;
  SignalId signal;
  Visibility visibility = Visibility::kPrivateInput;
};

using InputMap = std::map<std::string, FieldElement, std::less<>>;

struct Witness {
  std::vector<FieldElement> values;

  const FieldElement& operator[](SignalId s) const { return values.at(s.index); }
};

struct CircuitStats {
  size_t nonlinear_constraints = 0;
  size_t linear_constraints = 0;
  size_t wires = 0;
  size_t public_inputs = 0;
  size_t private_inputs = 0;
  size_t outputs = 0;

  size_t total_constraints() const { return nonlinear_constraints + linear_constraints; }
  bool operator==(const CircuitStats&) const = default;
};

// A finalized rank-1 constraint system together with the program that
// computes a satisfying witness from named inputs. Immutable once built;
// safe to share across threads.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;

  size_t num_signals() const { return num_signals_; }
  size_t num_constraints() const { return nonlinear_.size(); }
  ConstraintView constraint(size_t i) const;

  std::span<const SignalId> public_inputs() const { return public_inputs_; }
  std::span<const SignalId> outputs() const { return outputs_; }
  std::span<const InputSlot> input_layout() const { return input_layout_; }
  std::span<const WitnessStep> witness_program() const { return witness_program_; }

  std::optional<SignalId> FindInput(std::string_view name) const;

  // Canonical JSON export. Field elements are decimal strings. The output
  // is byte-for-byte deterministic and survives a FromJson round trip.
  void WriteJson(std::ostream& os) const;
  std::string ToJson() const;
  static ConstraintSystem FromJsonValue(const nlohmann::ordered_json& doc);
  static ConstraintSystem FromJson(std::string_view text);

 private:
  friend class CircuitBuilder;

  void AppendConstraint(std::span<const Term> a, std::span<const Term> b,
                        std::span<const Term> c);

  uint32_t num_signals_ = 1;
  std::vector<Term> terms_;
  std::vector<uint64_t> lc_offsets_{0};  // three consecutive ranges per constraint
  std::vector<uint8_t> nonlinear_;
  std::vector<SignalId> public_inputs_;
  std::vector<SignalId> outputs_;
  std::vector<InputSlot> input_layout_;
  std::vector<WitnessStep> witness_program_;
};

// Single-writer builder. Linear assignments (Assign) are recorded as witness
// steps and substituted into every later constraint that mentions them, so
// they never cost a constraint of their own.
class CircuitBuilder {
 public:
  CircuitBuilder() = default;

  // Internal signals may be unnamed. Input names must be unique; an empty
  // name for an input becomes "in<index>".
  SignalId Alloc(Visibility visibility, std::string name = {});

  // Appends a*b = c after substituting linear signals.
  void Enforce(const LinearCombination& a, const LinearCombination& b,
               const LinearCombination& c);

  // Appends a witness step. Linear steps mark their target as substituted.
  void PushWitnessStep(WitnessStep step);

  // Fresh internal signal equal to `lc`, substituted away in constraints.
  SignalId Assign(const LinearCombination& lc);
  // Fresh internal signal equal to `lc`, kept as a wire and tied by one
  // linear constraint (lc) * 1 = s.
  SignalId AssignPinned(const LinearCombination& lc);
  // Fresh internal signal computed as x*y (no constraint emitted).
  SignalId Product(SignalId x, SignalId y);
  // Fresh internal signal holding 1/x, or 0 when x = 0 (no constraint emitted).
  SignalId InvOrZero(SignalId x);

  void MarkOutput(SignalId s);

  // Rewrites `lc` over non-substituted signals only.
  LinearCombination Expand(const LinearCombination& lc) const;

  size_t num_signals() const { return cs_.num_signals_; }
  size_t num_constraints() const { return cs_.num_constraints(); }
  size_t num_nonlinear() const { return nonlinear_count_; }
  bool finalized() const { return finalized_; }

  // Checks that every internal signal is assigned and hands over the system.
  ConstraintSystem Finalize();

 private:
  void RequireOpen() const;
  void RequireKnown(SignalId s) const;
  void RequireAssigned(SignalId s) const;
  void ExpandInto(const LinearCombination& lc, const FieldElement& scale,
                  std::vector<Term>& out) const;

  ConstraintSystem cs_;
  std::vector<uint8_t> assigned_{1};       // constant and inputs count as assigned
  std::vector<uint8_t> is_input_{0};
  std::vector<int64_t> linear_step_of_{-1};  // substituted signal -> step index
  size_t nonlinear_count_ = 0;
  bool finalized_ = false;
};

// Replays the witness program. Throws CircuitError on a missing or unknown
// input name.
Witness SynthesizeWitness(const ConstraintSystem& cs, const InputMap& inputs);

// True iff every constraint holds. Throws CircuitError on a length mismatch.
bool CheckSatisfied(const ConstraintSystem& cs, const Witness& w);
// Index of the first violated constraint, if any.
std::optional<size_t> FirstViolatedConstraint(const ConstraintSystem& cs, const Witness& w);

CircuitStats Stats(const ConstraintSystem& cs);

void WriteWitnessJson(std::ostream& os, const Witness& w);
Witness WitnessFromJson(const nlohmann::ordered_json& doc);

}  // namespace zkmsa

#endif  // ZKMSA_R1CS_H_
