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

#ifndef ZKMSA_MSA_CIRCUIT_H_
#define ZKMSA_MSA_CIRCUIT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zkmsa/r1cs.h"

namespace zkmsa {

// Letter -> field code map. The gap '-' is always code 0 (it doubles as
// sequence padding); letters get distinct codes in [1, 255].
class Alphabet {
 public:
  static constexpr char kGap = '-';

  // A:1 C:2 G:3 T:4
  static Alphabet Dna();
  // The 20 standard amino acids, codes 1..20 in ACDEFGHIKLMNPQRSTVWY order.
  static Alphabet Protein();
  // Throws EncodingError on a zero or repeated code, or a '-' letter.
  static Alphabet FromCodes(const std::map<char, uint8_t>& codes);

  // Code for `ch`; 0 for the gap; nullopt if not in the alphabet.
  std::optional<uint8_t> Code(char ch) const;
  bool IsLetter(char ch) const { return ch != kGap && Code(ch).has_value(); }
  const std::map<char, uint8_t>& codes() const { return codes_; }

  bool operator==(const Alphabet&) const = default;

 private:
  std::map<char, uint8_t> codes_;
};

struct VisibilityMask {
  std::vector<bool> seq_public;  // one flag per sequence
  bool score_public = true;      // the alignment is always private

  static VisibilityMask Default(size_t nseq) { return {std::vector<bool>(nseq, true), true}; }
  bool operator==(const VisibilityMask&) const = default;
};

struct CircuitParams {
  size_t nseq = 2;
  size_t seq_len = 1;
  size_t aln_len = 1;
  Alphabet alphabet = Alphabet::Dna();
  VisibilityMask visibility = VisibilityMask::Default(2);

  // DNA alphabet, every sequence and the score public.
  static CircuitParams Make(size_t nseq, size_t seq_len, size_t aln_len);
  // Throws EncodingError unless nseq >= 2, seq_len >= 1, aln_len >= 1 and
  // the mask has one flag per sequence.
  void Validate() const;
};

// The prover's plaintext: input sequences, their alignment and the claimed
// sum-of-pairs score.
struct MsaInstance {
  std::vector<std::string> seqs;
  std::vector<std::string> aln;
  int64_t score = 0;
};

// Largest achievable |score|: C(nseq, 2) * aln_len.
uint64_t MaxScoreMagnitude(size_t nseq, size_t aln_len);

// Input names used in ConstraintSystem::input_layout().
std::string SeqInputName(size_t k, size_t i);
std::string AlnInputName(size_t k, size_t j);
inline constexpr std::string_view kScoreInputName = "score";

// Per-column score: +1 for equal non-gap codes, -1 otherwise (mismatch, one
// gap, two gaps). 9 non-linear constraints.
SignalId BuildScoringSystem(CircuitBuilder& b, SignalId x0, SignalId x1);

// Running sum of BuildScoringSystem over the columns of two rows.
SignalId BuildPairScore(CircuitBuilder& b, const std::vector<SignalId>& row_i,
                        const std::vector<SignalId>& row_j);

// Sum of BuildPairScore over all pairs i < j, in lexicographic order.
SignalId BuildMsaScore(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& aln);

// IsEqual(BuildMsaScore(aln), score).
SignalId BuildCheckAlnScore(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& aln,
                            SignalId score);

struct T1Outputs {
  SignalId es;   // south: sequence exhausted (r = 0)
  SignalId ese;  // south-east: letters match
  SignalId ee;   // east: alignment gap against a letter
};

// Routing cell for a sequence row. Emits 13 non-linear constraints.
T1Outputs BuildT1(CircuitBuilder& b, SignalId e, SignalId r, SignalId c);

// Cell of the final row: passes the enable east across trailing gaps.
// Emits 5 non-linear constraints.
SignalId BuildT2(CircuitBuilder& b, SignalId e, SignalId c);

// Signals of one sequence's routing grid, kept for inspection in tests.
struct SequenceGrid {
  std::vector<std::vector<SignalId>> t1_enable;  // [seq_len][aln_len]
  std::vector<std::vector<T1Outputs>> t1;        // [seq_len][aln_len]
  std::vector<SignalId> t2_enable;               // [aln_len]
  std::vector<SignalId> t2;                      // [aln_len]
  std::vector<SignalId> boundary_enable;         // [seq_len], column aln_len
  std::vector<SignalId> boundary_south;          // [seq_len]
  SignalId accept;
};

struct AlnSeqCheck {
  SignalId ok;
  std::vector<SequenceGrid> grids;
};

// Sequence/alignment consistency. For every sequence k a grid of T1 cells
// (rows = sequence positions, columns = alignment positions) sits above one
// row of T2 cells. The cell (0, 0) is enabled with a pinned constant one;
// every other cell's enable is the Or of its incoming edges (ee from the
// west, es from the north, ese from the north-west).
//
// Column aln_len is a boundary: once the alignment is used up the remaining
// sequence cells must be padding, checked by And(e, r = 0) chained south. The
// virtual cell (seq_len, aln_len) accepts if any of ese of T1(seq_len-1,
// aln_len-1), T2(aln_len-1) or the bottom boundary cell fires. The result is
// the And of all per-sequence acceptance bits.
AlnSeqCheck BuildCheckAlnSeq(CircuitBuilder& b, const std::vector<std::vector<SignalId>>& seq,
                             const std::vector<std::vector<SignalId>>& aln);

struct MainCircuit {
  ConstraintSystem cs;
  SignalId y;          // public output
  SignalId msa_score;  // computed sum-of-pairs score (substituted signal)
  SignalId score_ok;
  SignalId seq_ok;
  std::vector<SequenceGrid> grids;
};

// The full validator: y = And(check_aln_score, check_aln_seq). Sequence and
// score inputs are public or private per the mask; alignment inputs are
// always private. Throws EncodingError on invalid params.
MainCircuit BuildMainCircuit(const CircuitParams& params);
ConstraintSystem BuildMain(const CircuitParams& params);

// Exact non-linear constraint count of BuildMain:
//
//   9 C(N,2) A            scoring_system per column per pair
// + 15 N S A              T1 cells (13) + two Or merges per cell
// + 5 N A                 T2 cells
// + 3 N S                 boundary column: IsEqual(r, 0) + And
// + N                     N - 1 Ands folding the sequences, 1 And for y
// + 2                     IsEqual of computed and claimed score
//
// Or merges: interior T1 cells, T2 cells past column 0, boundary cells past
// row 0 and the acceptance cell all have three incoming edges; summed over
// the grid they come to exactly 2 S A. With N = nseq, S = seq_len,
// A = aln_len.
uint64_t ExpectedNonlinearConstraints(size_t nseq, size_t seq_len, size_t aln_len);
// The only linear constraint pins the grid's start enable to one.
inline constexpr uint64_t kExpectedLinearConstraints = 1;

// Maps plaintext onto circuit inputs: letters through the alphabet,
// sequences right-padded with 0 to seq_len, gaps to 0, score through
// EncodeSigned. Throws EncodingError on count or length mismatches, letters
// outside the alphabet, a gap inside a sequence, or |score| above
// MaxScoreMagnitude.
InputMap EncodeInstance(const CircuitParams& params, const MsaInstance& inst);

// Encodes one row (gaps allowed) into alphabet codes.
std::vector<uint8_t> EncodeRow(const Alphabet& alphabet, std::string_view row, bool allow_gaps);

}  // namespace zkmsa

#endif  // ZKMSA_MSA_CIRCUIT_H_
