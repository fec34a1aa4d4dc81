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

#include "zkmsa/r1cs.h"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zkmsa/error.h"

namespace zkmsa {
namespace {

void Normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.signal < y.signal; });
  size_t out = 0;
  for (size_t i = 0; i < terms.size();) {
    Term merged = terms[i];
    size_t j = i + 1;
    for (; j < terms.size() && terms[j].signal == merged.signal; ++j) merged.coeff += terms[j].coeff;
    if (!merged.coeff.IsZero()) terms[out++] = merged;
    i = j;
  }
  terms.resize(out);
}

std::string_view RuleName(WitnessStep::Rule rule) {
  switch (rule) {
    case WitnessStep::Rule::kLinear:
      return "linear";
    case WitnessStep::Rule::kProduct:
      return "product";
    case WitnessStep::Rule::kInvOrZero:
      return "inv_or_zero";
  }
  return "?";
}

void WriteTerms(std::ostream& os, std::span<const Term> terms) {
  os << '[';
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << ',';
    os << "[\"" << terms[i].coeff.ToDecimal() << "\"," << terms[i].signal.index << ']';
  }
  os << ']';
}

template <typename Container>
void WriteIds(std::ostream& os, const Container& ids) {
  os << '[';
  bool first = true;
  for (SignalId s : ids) {
    if (!first) os << ',';
    first = false;
    os << s.index;
  }
  os << ']';
}

SignalId ReadSignal(const nlohmann::ordered_json& v, uint32_t num_signals) {
  const uint64_t idx = v.get<uint64_t>();
  if (idx >= num_signals) throw CircuitError("signal index out of range: " + std::to_string(idx));
  return SignalId{static_cast<uint32_t>(idx)};
}

std::vector<Term> ReadTerms(const nlohmann::ordered_json& arr, uint32_t num_signals) {
  std::vector<Term> terms;
  terms.reserve(arr.size());
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 2) throw CircuitError("term must be [coeff, signal]");
    terms.push_back({FieldElement::FromDecimal(t[0].get<std::string>()),
                     ReadSignal(t[1], num_signals)});
  }
  return terms;
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearCombination

LinearCombination::LinearCombination(SignalId s) : terms_{{FieldElement::One(), s}} {}

LinearCombination::LinearCombination(std::vector<Term> terms) : terms_(std::move(terms)) {
  Normalize(terms_);
}

LinearCombination LinearCombination::Constant(const FieldElement& c) {
  LinearCombination lc;
  if (!c.IsZero()) lc.terms_.push_back({c, SignalId::One()});
  return lc;
}

void LinearCombination::AddTerm(const FieldElement& coeff, SignalId s) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const Term& t, SignalId id) { return t.signal < id; });
  if (it != terms_.end() && it->signal == s) {
    it->coeff += coeff;
    if (it->coeff.IsZero()) terms_.erase(it);
  } else if (!coeff.IsZero()) {
    terms_.insert(it, Term{coeff, s});
  }
}

bool LinearCombination::IsConstant() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.signal.IsConstant(); });
}

std::optional<SignalId> LinearCombination::AsSingleSignal() const {
  if (terms_.size() == 1 && !terms_[0].signal.IsConstant() && terms_[0].coeff.IsOne()) {
    return terms_[0].signal;
  }
  return std::nullopt;
}

FieldElement LinearCombination::Evaluate(std::span<const FieldElement> values) const {
  FieldElement acc;
  for (const Term& t : terms_) acc += t.coeff * values[t.signal.index];
  return acc;
}

LinearCombination operator+(const LinearCombination& a, const LinearCombination& b) {
  LinearCombination r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].signal < b.terms_[j].signal)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].signal < a.terms_[i].signal) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      const FieldElement sum = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!sum.IsZero()) r.terms_.push_back({sum, a.terms_[i].signal});
      ++i;
      ++j;
    }
  }
  return r;
}

LinearCombination LinearCombination::operator-() const {
  LinearCombination r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LinearCombination operator-(const LinearCombination& a, const LinearCombination& b) {
  return a + (-b);
}

LinearCombination operator*(const LinearCombination& a, const FieldElement& k) {
  if (k.IsZero()) return LinearCombination();
  LinearCombination r = a;
  for (Term& t : r.terms_) t.coeff *= k;
  return r;
}

bool IsNonlinear(std::span<const Term> a, std::span<const Term> b) {
  const auto has_var = [](std::span<const Term> lc) {
    return std::any_of(lc.begin(), lc.end(), [](const Term& t) { return !t.signal.IsConstant(); });
  };
  return has_var(a) && has_var(b);
}

// ---------------------------------------------------------------------------
// WitnessStep

WitnessStep WitnessStep::Linear(SignalId target, LinearCombination lc) {
  WitnessStep s;
  s.target = target;
  s.rule = Rule::kLinear;
  s.lc = std::move(lc);
  return s;
}

WitnessStep WitnessStep::Product(SignalId target, SignalId x, SignalId y) {
  WitnessStep s;
  s.target = target;
  s.rule = Rule::kProduct;
  s.x = x;
  s.y = y;
  return s;
}

WitnessStep WitnessStep::InvOrZero(SignalId target, SignalId x) {
  WitnessStep s;
  s.target = target;
  s.rule = Rule::kInvOrZero;
  s.x = x;
  return s;
}

// ---------------------------------------------------------------------------
// ConstraintSystem

ConstraintView ConstraintSystem::constraint(size_t i) const {
  if (i >= num_constraints()) throw CircuitError("constraint index out of range");
  const Term* base = terms_.data();
  const auto range = [&](size_t k) {
    return std::span<const Term>(base + lc_offsets_[k], lc_offsets_[k + 1] - lc_offsets_[k]);
  };
  return ConstraintView{range(3 * i), range(3 * i + 1), range(3 * i + 2), nonlinear_[i] != 0};
}

void ConstraintSystem::AppendConstraint(std::span<const Term> a, std::span<const Term> b,
                                        std::span<const Term> c) {
  for (auto lc : {a, b, c}) {
    terms_.insert(terms_.end(), lc.begin(), lc.end());
    lc_offsets_.push_back(terms_.size());
  }
  nonlinear_.push_back(IsNonlinear(a, b) ? 1 : 0);
}

std::optional<SignalId> ConstraintSystem::FindInput(std::string_view name) const {
  for (const InputSlot& slot : input_layout_) {
    if (slot.name == name) return slot.signal;
  }
  return std::nullopt;
}

void ConstraintSystem::WriteJson(std::ostream& os) const {
  os << "{\"num_signals\":" << num_signals_ << ",\"constraints\":[";
  for (size_t i = 0; i < num_constraints(); ++i) {
    if (i) os << ',';
    const ConstraintView c = constraint(i);
    os << "{\"a\":";
    WriteTerms(os, c.a);
    os << ",\"b\":";
    WriteTerms(os, c.b);
    os << ",\"c\":";
    WriteTerms(os, c.c);
    os << '}';
  }
  os << "],\"public_inputs\":";
  WriteIds(os, public_inputs_);
  os << ",\"outputs\":";
  WriteIds(os, outputs_);
  os << ",\"input_layout\":{";
  for (size_t i = 0; i < input_layout_.size(); ++i) {
    if (i) os << ',';
    os << nlohmann::json(input_layout_[i].name).dump() << ':' << input_layout_[i].signal.index;
  }
  os << "},\"witness_program\":[";
  for (size_t i = 0; i < witness_program_.size(); ++i) {
    if (i) os << ',';
    const WitnessStep& s = witness_program_[i];
    os << "{\"target\":" << s.target.index << ",\"rule\":\"" << RuleName(s.rule) << '"';
    switch (s.rule) {
      case WitnessStep::Rule::kLinear:
        os << ",\"lc\":";
        WriteTerms(os, s.lc.terms());
        break;
      case WitnessStep::Rule::kProduct:
        os << ",\"x\":" << s.x.index << ",\"y\":" << s.y.index;
        break;
      case WitnessStep::Rule::kInvOrZero:
        os << ",\"x\":" << s.x.index;
        break;
    }
    os << '}';
  }
  os << "]}";
}

std::string ConstraintSystem::ToJson() const {
  std::ostringstream os;
  WriteJson(os);
  return os.str();
}

ConstraintSystem ConstraintSystem::FromJson(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("constraint system is not valid JSON: ") + e.what());
  }
  return FromJsonValue(doc);
}

ConstraintSystem ConstraintSystem::FromJsonValue(const nlohmann::ordered_json& doc) {
  try {
    ConstraintSystem cs;
    const uint64_t n = doc.at("num_signals").get<uint64_t>();
    if (n == 0 || n > UINT32_MAX) throw CircuitError("num_signals out of range");
    cs.num_signals_ = static_cast<uint32_t>(n);

    for (const auto& c : doc.at("constraints")) {
      const LinearCombination a(ReadTerms(c.at("a"), cs.num_signals_));
      const LinearCombination b(ReadTerms(c.at("b"), cs.num_signals_));
      const LinearCombination cc(ReadTerms(c.at("c"), cs.num_signals_));
      cs.AppendConstraint(a.terms(), b.terms(), cc.terms());
    }

    std::set<uint32_t> public_set;
    for (const auto& v : doc.at("public_inputs")) {
      const SignalId s = ReadSignal(v, cs.num_signals_);
      if (s.IsConstant()) throw CircuitError("public input cannot be the constant signal");
      cs.public_inputs_.push_back(s);
      public_set.insert(s.index);
    }
    for (const auto& v : doc.at("outputs")) {
      const SignalId s = ReadSignal(v, cs.num_signals_);
      if (s.IsConstant()) throw CircuitError("output cannot be the constant signal");
      cs.outputs_.push_back(s);
    }

    std::set<uint32_t> seen;
    for (const auto& [name, id] : doc.at("input_layout").items()) {
      const SignalId s = ReadSignal(id, cs.num_signals_);
      if (s.IsConstant() || !seen.insert(s.index).second) {
        throw CircuitError("input_layout maps '" + name + "' to an invalid signal");
      }
      cs.input_layout_.push_back({name, s,
                                  public_set.count(s.index) ? Visibility::kPublicInput
                                                            : Visibility::kPrivateInput});
    }
    for (uint32_t p : public_set) {
      if (!seen.count(p)) throw CircuitError("public input missing from input_layout");
    }

    for (const auto& st : doc.at("witness_program")) {
      const SignalId target = ReadSignal(st.at("target"), cs.num_signals_);
      const std::string rule = st.at("rule").get<std::string>();
      if (rule == "linear") {
        cs.witness_program_.push_back(WitnessStep::Linear(
            target, LinearCombination(ReadTerms(st.at("lc"), cs.num_signals_))));
      } else if (rule == "product") {
        cs.witness_program_.push_back(WitnessStep::Product(
            target, ReadSignal(st.at("x"), cs.num_signals_), ReadSignal(st.at("y"), cs.num_signals_)));
      } else if (rule == "inv_or_zero") {
        cs.witness_program_.push_back(
            WitnessStep::InvOrZero(target, ReadSignal(st.at("x"), cs.num_signals_)));
      } else {
        throw CircuitError("unknown witness rule '" + rule + "'");
      }
    }
    return cs;
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("malformed constraint system JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// CircuitBuilder

void CircuitBuilder::RequireOpen() const {
  if (finalized_) throw CircuitError("builder already finalized");
}

void CircuitBuilder::RequireKnown(SignalId s) const {
  if (s.index >= cs_.num_signals_) {
    throw CircuitError("unknown signal " + std::to_string(s.index));
  }
}

void CircuitBuilder::RequireAssigned(SignalId s) const {
  RequireKnown(s);
  if (!assigned_[s.index]) {
    throw CircuitError("signal " + std::to_string(s.index) + " referenced before assignment");
  }
}

SignalId CircuitBuilder::Alloc(Visibility visibility, std::string name) {
  RequireOpen();
  const SignalId s{cs_.num_signals_++};
  const bool input = visibility != Visibility::kInternal;
  assigned_.push_back(input ? 1 : 0);
  is_input_.push_back(input ? 1 : 0);
  linear_step_of_.push_back(-1);
  if (input) {
    if (name.empty()) name = "in" + std::to_string(s.index);
    for (const InputSlot& slot : cs_.input_layout_) {
      if (slot.name == name) throw CircuitError("duplicate input name '" + name + "'");
    }
    cs_.input_layout_.push_back({std::move(name), s, visibility});
    if (visibility == Visibility::kPublicInput) cs_.public_inputs_.push_back(s);
  }
  return s;
}

void CircuitBuilder::ExpandInto(const LinearCombination& lc, const FieldElement& scale,
                                std::vector<Term>& out) const {
  for (const Term& t : lc.terms()) {
    const FieldElement k = t.coeff * scale;
    const int64_t step = linear_step_of_[t.signal.index];
    if (step >= 0) {
      ExpandInto(cs_.witness_program_[static_cast<size_t>(step)].lc, k, out);
    } else {
      out.push_back({k, t.signal});
    }
  }
}

LinearCombination CircuitBuilder::Expand(const LinearCombination& lc) const {
  for (const Term& t : lc.terms()) RequireKnown(t.signal);
  std::vector<Term> out;
  out.reserve(lc.size());
  ExpandInto(lc, FieldElement::One(), out);
  return LinearCombination(std::move(out));
}

void CircuitBuilder::Enforce(const LinearCombination& a, const LinearCombination& b,
                             const LinearCombination& c) {
  RequireOpen();
  const LinearCombination ea = Expand(a);
  const LinearCombination eb = Expand(b);
  const LinearCombination ec = Expand(c);
  cs_.AppendConstraint(ea.terms(), eb.terms(), ec.terms());
  if (cs_.nonlinear_.back()) ++nonlinear_count_;
}

void CircuitBuilder::PushWitnessStep(WitnessStep step) {
  RequireOpen();
  RequireKnown(step.target);
  if (step.target.IsConstant() || is_input_[step.target.index]) {
    throw CircuitError("witness step cannot target an input or the constant");
  }
  if (assigned_[step.target.index]) {
    throw CircuitError("signal " + std::to_string(step.target.index) + " assigned twice");
  }
  switch (step.rule) {
    case WitnessStep::Rule::kLinear:
      for (const Term& t : step.lc.terms()) RequireAssigned(t.signal);
      break;
    case WitnessStep::Rule::kProduct:
      RequireAssigned(step.x);
      RequireAssigned(step.y);
      break;
    case WitnessStep::Rule::kInvOrZero:
      RequireAssigned(step.x);
      break;
  }
  assigned_[step.target.index] = 1;
  if (step.rule == WitnessStep::Rule::kLinear) {
    linear_step_of_[step.target.index] = static_cast<int64_t>(cs_.witness_program_.size());
  }
  cs_.witness_program_.push_back(std::move(step));
}

SignalId CircuitBuilder::Assign(const LinearCombination& lc) {
  const SignalId s = Alloc(Visibility::kInternal);
  PushWitnessStep(WitnessStep::Linear(s, lc));
  return s;
}

SignalId CircuitBuilder::AssignPinned(const LinearCombination& lc) {
  const SignalId s = Alloc(Visibility::kInternal);
  PushWitnessStep(WitnessStep::Linear(s, lc));
  linear_step_of_[s.index] = -1;
  Enforce(lc, LinearCombination::Constant(1), s);
  return s;
}

SignalId CircuitBuilder::Product(SignalId x, SignalId y) {
  const SignalId s = Alloc(Visibility::kInternal);
  PushWitnessStep(WitnessStep::Product(s, x, y));
  return s;
}

SignalId CircuitBuilder::InvOrZero(SignalId x) {
  const SignalId s = Alloc(Visibility::kInternal);
  PushWitnessStep(WitnessStep::InvOrZero(s, x));
  return s;
}

void CircuitBuilder::MarkOutput(SignalId s) {
  RequireOpen();
  RequireAssigned(s);
  if (s.IsConstant()) throw CircuitError("the constant signal cannot be an output");
  cs_.outputs_.push_back(s);
}

ConstraintSystem CircuitBuilder::Finalize() {
  RequireOpen();
  for (size_t i = 0; i < assigned_.size(); ++i) {
    if (!assigned_[i]) throw CircuitError("internal signal " + std::to_string(i) + " never assigned");
  }
  finalized_ = true;
  return std::move(cs_);
}

// ---------------------------------------------------------------------------
// Witness

Witness SynthesizeWitness(const ConstraintSystem& cs, const InputMap& inputs) {
  Witness w;
  w.values.assign(cs.num_signals(), FieldElement());
  w.values[0] = FieldElement::One();

  for (const InputSlot& slot : cs.input_layout()) {
    auto it = inputs.find(slot.name);
    if (it == inputs.end()) throw CircuitError("missing input '" + slot.name + "'");
    w.values[slot.signal.index] = it->second;
  }
  if (inputs.size() != cs.input_layout().size()) {
    for (const auto& [name, value] : inputs) {
      if (!cs.FindInput(name)) throw CircuitError("unknown input '" + name + "'");
    }
  }

  for (const WitnessStep& step : cs.witness_program()) {
    FieldElement& out = w.values[step.target.index];
    switch (step.rule) {
      case WitnessStep::Rule::kLinear:
        out = step.lc.Evaluate(w.values);
        break;
      case WitnessStep::Rule::kProduct:
        out = w.values[step.x.index] * w.values[step.y.index];
        break;
      case WitnessStep::Rule::kInvOrZero: {
        const FieldElement& x = w.values[step.x.index];
        out = x.IsZero() ? FieldElement() : x.Inverse();
        break;
      }
    }
  }
  return w;
}

std::optional<size_t> FirstViolatedConstraint(const ConstraintSystem& cs, const Witness& w) {
  if (w.values.size() != cs.num_signals()) {
    throw CircuitError("witness length " + std::to_string(w.values.size()) +
                       " does not match num_signals " + std::to_string(cs.num_signals()));
  }
  const auto eval = [&](std::span<const Term> lc) {
    FieldElement acc;
    for (const Term& t : lc) acc += t.coeff * w.values[t.signal.index];
    return acc;
  };
  for (size_t i = 0; i < cs.num_constraints(); ++i) {
    const ConstraintView c = cs.constraint(i);
    if (eval(c.a) * eval(c.b) != eval(c.c)) return i;
  }
  return std::nullopt;
}

bool CheckSatisfied(const ConstraintSystem& cs, const Witness& w) {
  if (!FirstViolatedConstraint(cs, w).has_value()) return w.values[0].IsOne();
  return false;
}

CircuitStats Stats(const ConstraintSystem& cs) {
  CircuitStats s;
  for (size_t i = 0; i < cs.num_constraints(); ++i) {
    if (cs.constraint(i).nonlinear) {
      ++s.nonlinear_constraints;
    } else {
      ++s.linear_constraints;
    }
  }
  s.wires = cs.num_signals();
  s.public_inputs = cs.public_inputs().size();
  s.private_inputs = cs.input_layout().size() - s.public_inputs;
  s.outputs = cs.outputs().size();
  return s;
}

void WriteWitnessJson(std::ostream& os, const Witness& w) {
  os << '[';
  for (size_t i = 0; i < w.values.size(); ++i) {
    if (i) os << ',';
    os << '"' << w.values[i].ToDecimal() << '"';
  }
  os << ']';
}

Witness WitnessFromJson(const nlohmann::ordered_json& doc) {
  if (!doc.is_array()) throw CircuitError("witness JSON must be an array of decimal strings");
  Witness w;
  w.values.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_string()) throw CircuitError("witness entries must be decimal strings");
    w.values.push_back(FieldElement::FromDecimal(v.get<std::string>()));
  }
  return w;
}

}  // namespace zkmsa
