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

#include "fasta.h"

#include <cctype>
#include <sstream>

#include "zkmsa/error.h"

namespace zkmsa::cli {

std::vector<FastaRecord> ParseFasta(std::string_view text) {
  std::vector<FastaRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ';') continue;
    if (line[0] == '>') {
      records.push_back(FastaRecord{line.substr(1), {}});
      continue;
    }
    if (records.empty()) {
      throw EncodingError("FASTA line " + std::to_string(line_no) + " precedes the first header");
    }
    for (char ch : line) {
      const auto u = static_cast<unsigned char>(ch);
      if (std::isspace(u)) continue;
      if (!std::isalpha(u) && ch != '-') {
        throw EncodingError("FASTA line " + std::to_string(line_no) + ": illegal character '" +
                            std::string(1, ch) + "'");
      }
      records.back().letters.push_back(static_cast<char>(std::toupper(u)));
    }
  }
  return records;
}

}  // namespace zkmsa::cli
