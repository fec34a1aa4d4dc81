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

#ifndef ZKMSA_FIELD_H_
#define ZKMSA_FIELD_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace zkmsa {

// Element of the BN254 scalar field
//   p = 21888242871839275222246405745257275088548364400416034343698204186575808495617.
//
// Every circuit signal lives here. Negative integers are represented by
// p - |s|, so -1 is the largest element. Values are kept in Montgomery form
// internally; the public surface only ever exposes canonical integers.
class FieldElement {
 public:
  using Limbs = std::array<uint64_t, 4>;  // little-endian 64-bit words

  static constexpr Limbs kModulus = {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                     0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr std::string_view kModulusDecimal =
      "21888242871839275222246405745257275088548364400416034343698204186575808495617";

  constexpr FieldElement() = default;

  static FieldElement Zero() { return FieldElement(); }
  static FieldElement One();
  static FieldElement FromUint(uint64_t v);
  // Throws FieldError unless `limbs` encodes an integer < p.
  static FieldElement FromLimbs(const Limbs& limbs);
  // Parses a canonical decimal string (digits only, value < p).
  static FieldElement FromDecimal(std::string_view decimal);
  static FieldElement FromBytes(const std::array<uint8_t, 32>& le_bytes);

  Limbs ToLimbs() const;
  std::string ToDecimal() const;
  std::array<uint8_t, 32> ToBytes() const;

  bool IsZero() const { return mont_ == Limbs{}; }
  bool IsOne() const;

  // Multiplicative inverse. Throws FieldError for zero.
  FieldElement Inverse() const;
  FieldElement Pow(const Limbs& exponent) const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  bool operator==(const FieldElement& o) const = default;

  size_t Hash() const { return static_cast<size_t>(mont_[0] ^ (mont_[1] * 31) ^ mont_[3]); }

 private:
  Limbs mont_{};
};

std::ostream& operator<<(std::ostream& os, const FieldElement& f);

// s >= 0 maps to s, s < 0 maps to p - |s|. Every int64 lies inside the
// representable window |s| < p/2.
FieldElement EncodeSigned(int64_t s);
// Same mapping for an optionally '-'-prefixed decimal string of any size.
// Throws FieldError when |s| >= p/2 or the text is not an integer.
FieldElement EncodeSigned(std::string_view signed_decimal);

// Inverse of EncodeSigned restricted to the window [-bound, bound].
// Throws FieldError if the value lies outside it or if bound is 0 or does
// not fit int64.
int64_t DecodeSigned(const FieldElement& a, uint64_t bound);

}  // namespace zkmsa

template <>
struct std::hash<zkmsa::FieldElement> {
  size_t operator()(const zkmsa::FieldElement& f) const noexcept { return f.Hash(); }
};

#endif  // ZKMSA_FIELD_H_
