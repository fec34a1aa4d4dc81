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

#ifndef ZKMSA_SRC_DIGEST_H_
#define ZKMSA_SRC_DIGEST_H_

#include <array>
#include <cstdint>
#include <span>
#include <streambuf>
#include <string>
#include <string_view>
#include <vector>

struct evp_md_ctx_st;

namespace zkmsa::internal {

// Incremental SHA-256 (OpenSSL EVP).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(std::span<const uint8_t> data);
  void Update(std::string_view data);
  std::array<uint8_t, 32> Final();

 private:
  evp_md_ctx_st* ctx_;
};

// Output streambuf that hashes everything written to it.
class HashingStreambuf : public std::streambuf {
 public:
  explicit HashingStreambuf(Sha256& hash);
  ~HashingStreambuf() override;

 protected:
  int_type overflow(int_type ch) override;
  int sync() override;

 private:
  void Flush();

  Sha256& hash_;
  std::array<char, 1 << 16> buf_;
};

std::string Base64Encode(std::span<const uint8_t> data);
// Throws BackendError on invalid input.
std::vector<uint8_t> Base64Decode(std::string_view text);

}  // namespace zkmsa::internal

#endif  // ZKMSA_SRC_DIGEST_H_
