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

#include "zkmsa/msa_circuit.h"

#include <set>

#include "zkmsa/error.h"
#include "zkmsa/gadgets.h"

namespace zkmsa {
namespace {

using gadgets::And;
using gadgets::IsEqual;
using gadgets::IsZero;
using gadgets::Not;
using gadgets::Or;

SignalId MergeEnables(CircuitBuilder& b, const std::vector<SignalId>& incoming) {
  SignalId e = incoming.front();
  for (size_t i = 1; i < incoming.size(); ++i) e = Or(b, e, incoming[i]);
  return e;
}

SequenceGrid BuildSequenceGrid(CircuitBuilder& b, SignalId start, const std::vector<SignalId>& r,
                               const std::vector<SignalId>& c) {
  const size_t rows = r.size();
  const size_t cols = c.size();
  SequenceGrid g;
  g.t1_enable.assign(rows, std::vector<SignalId>(cols));
  g.t1.assign(rows, std::vector<T1Outputs>(cols));

  std::vector<SignalId> incoming;
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      incoming.clear();
      if (j > 0) incoming.push_back(g.t1[i][j - 1].ee);
      if (i > 0) incoming.push_back(g.t1[i - 1][j].es);
      if (i > 0 && j > 0) incoming.push_back(g.t1[i - 1][j - 1].ese);
      if (incoming.empty()) incoming.push_back(start);
      g.t1_enable[i][j] = MergeEnables(b, incoming);
      g.t1[i][j] = BuildT1(b, g.t1_enable[i][j], r[i], c[j]);
    }
  }

  const std::vector<T1Outputs>& last = g.t1[rows - 1];
  for (size_t j = 0; j < cols; ++j) {
    incoming.clear();
    if (j > 0) incoming.push_back(g.t2[j - 1]);
    incoming.push_back(last[j].es);
    if (j > 0) incoming.push_back(last[j - 1].ese);
    g.t2_enable.push_back(MergeEnables(b, incoming));
    g.t2.push_back(BuildT2(b, g.t2_enable.back(), c[j]));
  }

  for (size_t i = 0; i < rows; ++i) {
    incoming.clear();
    incoming.push_back(g.t1[i][cols - 1].ee);
    if (i > 0) {
      incoming.push_back(g.boundary_south[i - 1]);
      incoming.push_back(g.t1[i - 1][cols - 1].ese);
    }
    g.boundary_enable.push_back(MergeEnables(b, incoming));
    const SignalId padding = IsEqual(b, r[i], LinearCombination());
    g.boundary_south.push_back(And(b, g.boundary_enable.back(), padding));
  }

  g.accept = MergeEnables(b, {last[cols - 1].ese, g.t2[cols - 1], g.boundary_south[rows - 1]});
  return g;
}

void RequireRows(const std::vector<std::vector<SignalId>>& rows, size_t count, size_t len,
                 std::string_view what) {
  if (rows.size() != count) throw CircuitError(std::string(what) + ": wrong number of rows");
  for (const auto& row : rows) {
    if (row.size() != len || len == 0) throw CircuitError(std::string(what) + ": ragged rows");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet / params

Alphabet Alphabet::Dna() { return FromCodes({{'A', 1}, {'C', 2}, {'G', 3}, {'T', 4}}); }

Alphabet Alphabet::Protein() {
  std::map<char, uint8_t> codes;
  uint8_t next = 1;
  for (char ch : std::string_view("ACDEFGHIKLMNPQRSTVWY")) codes[ch] = next++;
  return FromCodes(codes);
}

Alphabet Alphabet::FromCodes(const std::map<char, uint8_t>& codes) {
  std::set<uint8_t> used;
  for (const auto& [ch, code] : codes) {
    if (ch == kGap) throw EncodingError("'-' is reserved for the gap");
    if (code == 0) throw EncodingError(std::string("letter '") + ch + "' has reserved code 0");
    if (!used.insert(code).second) {
      throw EncodingError("code " + std::to_string(code) + " assigned to more than one letter");
    }
  }
  if (codes.empty()) throw EncodingError("alphabet has no letters");
  Alphabet a;
  a.codes_ = codes;
  return a;
}

std::optional<uint8_t> Alphabet::Code(char ch) const {
  if (ch == kGap) return 0;
  auto it = codes_.find(ch);
  if (it == codes_.end()) return std::nullopt;
  return it->second;
}

CircuitParams CircuitParams::Make(size_t nseq, size_t seq_len, size_t aln_len) {
  CircuitParams p;
  p.nseq = nseq;
  p.seq_len = seq_len;
  p.aln_len = aln_len;
  p.visibility = VisibilityMask::Default(nseq);
  return p;
}

void CircuitParams::Validate() const {
  if (nseq < 2) throw EncodingError("nseq must be at least 2");
  if (seq_len < 1) throw EncodingError("seq_len must be at least 1");
  if (aln_len < 1) throw EncodingError("aln_len must be at least 1");
  if (visibility.seq_public.size() != nseq) {
    throw EncodingError("visibility mask needs one flag per sequence");
  }
}

uint64_t MaxScoreMagnitude(size_t nseq, size_t aln_len) {
  return static_cast<uint64_t>(nseq) * (nseq - 1) / 2 * aln_len;
}

std::string SeqInputName(size_t k, size_t i) {
  return "seq[" + std::to_string(k) + "][" + std::to_string(i) + "]";
}

std::string AlnInputName(size_t k, size_t j) {
  return "aln[" + std::to_string(k) + "][" + std::to_string(j) + "]";
}

// ---------------------------------------------------------------------------
// Score consistency

SignalId BuildScoringSystem(CircuitBuilder& b, SignalId x0, SignalId x1) {
  const SignalId xeq = IsEqual(b, x0, x1);
  const SignalId xneq = Not(b, xeq);
  const SignalId gap = Or(b, IsEqual(b, x0, LinearCombination()), IsEqual(b, x1, LinearCombination()));
  const SignalId bgap = And(b, xeq, gap);
  const SignalId ngap = Not(b, gap);
  const SignalId eq_ngap = And(b, xeq, ngap);
  // match + mismatch * -1 + two gaps * -1
  return b.Assign(LinearCombination(eq_ngap) - xneq - bgap);
}

SignalId BuildPairScore(CircuitBuilder& b, const std::vector<SignalId>& row_i,
                        const std::vector<SignalId>& row_j) {
  if (row_i.size() != row_j.size() || row_i.empty()) {
    throw CircuitError("pair_score rows must be non-empty and of equal length");
  }
  LinearCombination running;
  SignalId s;
  for (size_t col = 0; col < row_i.size(); ++col) {
    const SignalId y = BuildScoringSystem(b, row_i[col], row_j[col]);
    s = b.Assign(running + y);
    running = LinearCombination(s);
  }
  return s;
}

SignalId BuildMsaScore(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& aln) {
  if (aln.size() < 2) throw CircuitError("msa_score needs at least two rows");
  LinearCombination total;
  for (size_t i = 0; i < aln.size(); ++i) {
    for (size_t j = i + 1; j < aln.size(); ++j) total = total + BuildPairScore(b, aln[i], aln[j]);
  }
  return b.Assign(total);
}

SignalId BuildCheckAlnScore(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& aln,
                            SignalId score) {
  return IsEqual(b, BuildMsaScore(b, aln), score);
}

// ---------------------------------------------------------------------------
// Sequence consistency

T1Outputs BuildT1(CircuitBuilder& b, SignalId e, SignalId r, SignalId c) {
  const SignalId e1 = IsEqual(b, e, LinearCombination::Constant(1));
  const SignalId rc = IsEqual(b, c, r);
  const SignalId c0 = IsZero(b, c);
  const SignalId r0 = IsZero(b, r);
  const SignalId nr0 = Not(b, r0);

  const SignalId t1 = And(b, rc, nr0);
  const SignalId t2 = And(b, c0, nr0);

  return T1Outputs{And(b, e1, r0), And(b, e1, t1), And(b, e1, t2)};
}

SignalId BuildT2(CircuitBuilder& b, SignalId e, SignalId c) {
  const SignalId e1 = IsEqual(b, e, LinearCombination::Constant(1));
  const SignalId c0 = IsZero(b, c);
  return And(b, e1, c0);
}

AlnSeqCheck BuildCheckAlnSeq(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& seq,
                             const std::vector<std::vector<SignalId>>& aln) {
  if (seq.empty() || seq.size() != aln.size()) {
    throw CircuitError("check_aln_seq needs one alignment row per sequence");
  }
  RequireRows(seq, seq.size(), seq.front().size(), "check_aln_seq sequences");
  RequireRows(aln, aln.size(), aln.front().size(), "check_aln_seq alignment");

  AlnSeqCheck out;
  const SignalId start = b.AssignPinned(LinearCombination::Constant(1));
  for (size_t k = 0; k < seq.size(); ++k) {
    out.grids.push_back(BuildSequenceGrid(b, start, seq[k], aln[k]));
  }
  out.ok = out.grids.front().accept;
  for (size_t k = 1; k < out.grids.size(); ++k) out.ok = And(b, out.ok, out.grids[k].accept);
  return out;
}

MainCircuit BuildMainCircuit(const CircuitParams& params) {
  params.Validate();
  CircuitBuilder b;

  const auto seq_vis = [&](size_t k) {
    return params.visibility.seq_public[k] ? Visibility::kPublicInput : Visibility::kPrivateInput;
  };
  std::vector<std::vector<SignalId>> seq(params.nseq), aln(params.nseq);
  for (size_t k = 0; k < params.nseq; ++k) {
    for (size_t i = 0; i < params.seq_len; ++i) {
      seq[k].push_back(b.Alloc(seq_vis(k), SeqInputName(k, i)));
    }
  }
  for (size_t k = 0; k < params.nseq; ++k) {
    for (size_t j = 0; j < params.aln_len; ++j) {
      aln[k].push_back(b.Alloc(Visibility::kPrivateInput, AlnInputName(k, j)));
    }
  }
  const SignalId score =
      b.Alloc(params.visibility.score_public ? Visibility::kPublicInput : Visibility::kPrivateInput,
              std::string(kScoreInputName));

  MainCircuit m;
  AlnSeqCheck seq_check = BuildCheckAlnSeq(b, seq, aln);
  m.seq_ok = seq_check.ok;
  m.grids = std::move(seq_check.grids);
  m.msa_score = BuildMsaScore(b, aln);
  m.score_ok = IsEqual(b, m.msa_score, score);
  m.y = And(b, m.score_ok, m.seq_ok);
  b.MarkOutput(m.y);
  m.cs = b.Finalize();
  return m;
}

ConstraintSystem BuildMain(const CircuitParams& params) { return BuildMainCircuit(params).cs; }

uint64_t ExpectedNonlinearConstraints(size_t nseq, size_t seq_len, size_t aln_len) {
  const uint64_t n = nseq, s = seq_len, a = aln_len;
  const uint64_t pairs = n * (n - 1) / 2;
  return 9 * pairs * a + 15 * n * s * a + 5 * n * a + 3 * n * s + n + 2;
}

// ---------------------------------------------------------------------------
// Instance encoding

std::vector<uint8_t> EncodeRow(const Alphabet& alphabet, std::string_view row, bool allow_gaps) {
  std::vector<uint8_t> codes;
  codes.reserve(row.size());
  for (size_t i = 0; i < row.size(); ++i) {
    const char ch = row[i];
    if (ch == Alphabet::kGap && !allow_gaps) {
      throw EncodingError("gap character at position " + std::to_string(i) +
                          " inside an input sequence");
    }
    const std::optional<uint8_t> code = alphabet.Code(ch);
    if (!code) {
      throw EncodingError(std::string("character '") + ch + "' at position " + std::to_string(i) +
                          " is not in the alphabet");
    }
    codes.push_back(*code);
  }
  return codes;
}

InputMap EncodeInstance(const CircuitParams& params, const MsaInstance& inst) {
  params.Validate();
  if (inst.seqs.size() != params.nseq || inst.aln.size() != params.nseq) {
    throw EncodingError("instance has " + std::to_string(inst.seqs.size()) + " sequences and " +
                        std::to_string(inst.aln.size()) + " alignment rows; circuit expects " +
                        std::to_string(params.nseq));
  }
  const uint64_t max_score = MaxScoreMagnitude(params.nseq, params.aln_len);
  const uint64_t magnitude =
      inst.score < 0 ? ~static_cast<uint64_t>(inst.score) + 1 : static_cast<uint64_t>(inst.score);
  if (magnitude > max_score) {
    throw EncodingError("score " + std::to_string(inst.score) + " exceeds the achievable bound " +
                        std::to_string(max_score));
  }

  InputMap inputs;
  for (size_t k = 0; k < params.nseq; ++k) {
    if (inst.seqs[k].size() > params.seq_len) {
      throw EncodingError("sequence " + std::to_string(k) + " has length " +
                          std::to_string(inst.seqs[k].size()) + " > seq_len " +
                          std::to_string(params.seq_len));
    }
    const std::vector<uint8_t> codes = EncodeRow(params.alphabet, inst.seqs[k], false);
    for (size_t i = 0; i < params.seq_len; ++i) {
      inputs.emplace(SeqInputName(k, i), FieldElement::FromUint(i < codes.size() ? codes[i] : 0));
    }
  }
  for (size_t k = 0; k < params.nseq; ++k) {
    if (inst.aln[k].size() != params.aln_len) {
      throw EncodingError("alignment row " + std::to_string(k) + " has length " +
                          std::to_string(inst.aln[k].size()) + " != aln_len " +
                          std::to_string(params.aln_len));
    }
    const std::vector<uint8_t> codes = EncodeRow(params.alphabet, inst.aln[k], true);
    for (size_t j = 0; j < params.aln_len; ++j) {
      inputs.emplace(AlnInputName(k, j), FieldElement::FromUint(codes[j]));
    }
  }
  inputs.emplace(std::string(kScoreInputName), EncodeSigned(inst.score));
  return inputs;
}

}  // namespace zkmsa
