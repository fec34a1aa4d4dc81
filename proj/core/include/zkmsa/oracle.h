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

#ifndef ZKMSA_ORACLE_H_
#define ZKMSA_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zkmsa/msa_circuit.h"

// Plain string-level reference for everything the circuit checks. Nothing
// here touches field elements or the constraint builder.
namespace zkmsa::oracle {

// +1 for equal letters, -1 for a mismatch, a single gap or two gaps. Gaps
// are '-' (or code 0 in the integer overload).
int ScoreColumn(char a, char b);
int ScoreColumn(int a, int b);

// Throws EncodingError on a length mismatch.
int64_t ScorePair(std::string_view row_a, std::string_view row_b);

// Sum over unordered row pairs. Throws EncodingError on fewer than two rows
// or ragged rows.
int64_t SpScore(const std::vector<std::string>& aln);

// True iff removing every '-' from aln_row yields seq.
bool Consistent(std::string_view seq, std::string_view aln_row);

// Walks the same routing automaton the circuit wires up, on characters:
// sequence padded with '-' to seq_len, state (row, col) from (0, 0):
//   row < seq_len, col < aln_len: padding -> south; equal letters ->
//     south-east; alignment gap -> east; otherwise reject
//   row = seq_len (T2 row): alignment gap -> east, otherwise reject
//   col = aln_len (boundary): padding -> south, otherwise reject
// and accepts on reaching (seq_len, aln_len). Throws EncodingError if seq is
// longer than seq_len, contains '-', or aln_row is not aln_len long.
bool GridAccepts(std::string_view seq, std::string_view aln_row, size_t seq_len, size_t aln_len);

struct Verdict {
  bool valid = false;
  bool score_matches = false;
  int64_t computed_score = 0;
  std::vector<size_t> inconsistent;  // indices of sequences that do not match

  // One-line human readable reason.
  std::string Reason(int64_t claimed_score) const;
};

// Checks sp_score(aln) == score and Consistent(seqs[k], aln[k]) for all k.
// A structurally malformed instance (row count mismatch, ragged rows, gaps
// in sequences) throws EncodingError; an invalid one returns valid = false.
Verdict Validate(const MsaInstance& inst);

}  // namespace zkmsa::oracle

#endif  // ZKMSA_ORACLE_H_
