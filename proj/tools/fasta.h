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

#ifndef ZKMSA_TOOLS_FASTA_H_
#define ZKMSA_TOOLS_FASTA_H_

#include <string>
#include <string_view>
#include <vector>

namespace zkmsa::cli {

struct FastaRecord {
  std::string name;
  std::string letters;  // upper-cased, whitespace removed
};

// Parses ">name" headers followed by sequence lines. Blank lines are
// skipped; ';' lines are comments. Throws EncodingError on text before the
// first header or characters other than letters and '-'.
std::vector<FastaRecord> ParseFasta(std::string_view text);

}  // namespace zkmsa::cli

#endif  // ZKMSA_TOOLS_FASTA_H_
