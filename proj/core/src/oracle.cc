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

#include "zkmsa/oracle.h"

#include "zkmsa/error.h"

namespace zkmsa::oracle {

int ScoreColumn(char a, char b) { return (a == b && a != '-') ? 1 : -1; }

int ScoreColumn(int a, int b) { return (a == b && a != 0) ? 1 : -1; }

int64_t ScorePair(std::string_view row_a, std::string_view row_b) {
  if (row_a.size() != row_b.size()) throw EncodingError("alignment rows differ in length");
  int64_t total = 0;
  for (size_t i = 0; i < row_a.size(); ++i) total += ScoreColumn(row_a[i], row_b[i]);
  return total;
}

int64_t SpScore(const std::vector<std::string>& aln) {
  if (aln.size() < 2) throw EncodingError("sum-of-pairs needs at least two rows");
  for (const std::string& row : aln) {
    if (row.size() != aln.front().size()) throw EncodingError("ragged alignment rows");
  }
  int64_t total = 0;
  for (size_t i = 0; i < aln.size(); ++i) {
    for (size_t j = i + 1; j < aln.size(); ++j) total += ScorePair(aln[i], aln[j]);
  }
  return total;
}

bool Consistent(std::string_view seq, std::string_view aln_row) {
  std::string stripped;
  for (char ch : aln_row) {
    if (ch != '-') stripped.push_back(ch);
  }
  return stripped == seq;
}

bool GridAccepts(std::string_view seq, std::string_view aln_row, size_t seq_len, size_t aln_len) {
  if (seq.size() > seq_len) throw EncodingError("sequence longer than seq_len");
  if (seq.find('-') != std::string_view::npos) throw EncodingError("gap inside sequence");
  if (aln_row.size() != aln_len) throw EncodingError("alignment row is not aln_len long");

  const auto r = [&](size_t i) { return i < seq.size() ? seq[i] : '-'; };
  size_t row = 0, col = 0;
  while (row != seq_len || col != aln_len) {
    if (row < seq_len && col < aln_len) {
      if (r(row) == '-') {
        ++row;
      } else if (aln_row[col] == r(row)) {
        ++row;
        ++col;
      } else if (aln_row[col] == '-') {
        ++col;
      } else {
        return false;
      }
    } else if (row == seq_len) {
      if (aln_row[col] != '-') return false;
      ++col;
    } else {
      if (r(row) != '-') return false;
      ++row;
    }
  }
  return true;
}

std::string Verdict::Reason(int64_t claimed_score) const {
  if (valid) return "valid: score " + std::to_string(computed_score);
  std::string reason;
  if (!score_matches) {
    reason = "score mismatch: claimed " + std::to_string(claimed_score) + ", alignment scores " +
             std::to_string(computed_score);
  }
  for (size_t k : inconsistent) {
    if (!reason.empty()) reason += "; ";
    reason += "sequence " + std::to_string(k) + " is inconsistent with alignment row " +
              std::to_string(k);
  }
  return reason;
}

Verdict Validate(const MsaInstance& inst) {
  if (inst.seqs.size() != inst.aln.size()) {
    throw EncodingError("instance has " + std::to_string(inst.seqs.size()) + " sequences but " +
                        std::to_string(inst.aln.size()) + " alignment rows");
  }
  for (size_t k = 0; k < inst.seqs.size(); ++k) {
    if (inst.seqs[k].find('-') != std::string::npos) {
      throw EncodingError("sequence " + std::to_string(k) + " contains a gap");
    }
  }
  Verdict v;
  v.computed_score = SpScore(inst.aln);
  v.score_matches = v.computed_score == inst.score;
  for (size_t k = 0; k < inst.seqs.size(); ++k) {
    if (!Consistent(inst.seqs[k], inst.aln[k])) v.inconsistent.push_back(k);
  }
  v.valid = v.score_matches && v.inconsistent.empty();
  return v;
}

}  // namespace zkmsa::oracle
