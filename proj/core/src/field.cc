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

#include "zkmsa/field.h"

#include <algorithm>
#include <limits>
#include <ostream>

#include "zkmsa/error.h"

namespace zkmsa {
namespace {

using Limbs = FieldElement::Limbs;
using u128 = unsigned __int128;

constexpr const Limbs& P = FieldElement::kModulus;

constexpr bool GreaterOrEqual(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

// a - b, returns borrow.
constexpr uint64_t SubInPlace(Limbs& a, const Limbs& b) {
  uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    const u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<uint64_t>(d);
    borrow = static_cast<uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

constexpr uint64_t AddInPlace(Limbs& a, const Limbs& b) {
  uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    const u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    a[i] = static_cast<uint64_t>(s);
    carry = static_cast<uint64_t>(s >> 64);
  }
  return carry;
}

constexpr Limbs AddMod(Limbs a, const Limbs& b) {
  const uint64_t carry = AddInPlace(a, b);
  if (carry != 0 || GreaterOrEqual(a, P)) SubInPlace(a, P);
  return a;
}

constexpr Limbs SubMod(Limbs a, const Limbs& b) {
  if (SubInPlace(a, b) != 0) AddInPlace(a, P);
  return a;
}

// -p^{-1} mod 2^64 via Newton iteration.
constexpr uint64_t ComputeMontInv() {
  uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - P[0] * inv;
  return ~inv + 1;
}

// 2^512 mod p by repeated doubling.
constexpr Limbs ComputeR2() {
  Limbs x{1, 0, 0, 0};
  for (int i = 0; i < 512; ++i) x = AddMod(x, x);
  return x;
}

constexpr uint64_t kMontInv = ComputeMontInv();
constexpr Limbs kR2 = ComputeR2();
static_assert(P[0] * (~kMontInv + 1) == 1, "Montgomery constant");

// CIOS Montgomery product: a * b * 2^-256 mod p.
Limbs MontMul(const Limbs& a, const Limbs& b) {
  uint64_t t[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    uint64_t carry = 0;
    for (int j = 0; j < 4; ++j) {
      const u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<uint64_t>(s);
      carry = static_cast<uint64_t>(s >> 64);
    }
    u128 s = static_cast<u128>(t[4]) + carry;
    t[4] = static_cast<uint64_t>(s);
    t[5] = static_cast<uint64_t>(s >> 64);

    const uint64_t m = t[0] * kMontInv;
    s = static_cast<u128>(m) * P[0] + t[0];
    carry = static_cast<uint64_t>(s >> 64);
    for (int j = 1; j < 4; ++j) {
      s = static_cast<u128>(m) * P[j] + t[j] + carry;
      t[j - 1] = static_cast<uint64_t>(s);
      carry = static_cast<uint64_t>(s >> 64);
    }
    s = static_cast<u128>(t[4]) + carry;
    t[3] = static_cast<uint64_t>(s);
    t[4] = t[5] + static_cast<uint64_t>(s >> 64);
  }
  Limbs r{t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || GreaterOrEqual(r, P)) SubInPlace(r, P);
  return r;
}

// Multiplies a 256-bit integer by a small factor and adds `add`.
// Returns false on overflow past 2^256.
bool MulAddSmall(Limbs& x, uint64_t factor, uint64_t add) {
  uint64_t carry = add;
  for (int i = 0; i < 4; ++i) {
    const u128 s = static_cast<u128>(x[i]) * factor + carry;
    x[i] = static_cast<uint64_t>(s);
    carry = static_cast<uint64_t>(s >> 64);
  }
  return carry == 0;
}

// Parses decimal digits into a 256-bit integer. Returns false on bad input.
bool ParseDecimal(std::string_view text, Limbs& out) {
  if (text.empty()) return false;
  if (text.size() > 1 && text[0] == '0') return false;
  out = Limbs{};
  for (char ch : text) {
    if (ch < '0' || ch > '9') return false;
    if (!MulAddSmall(out, 10, static_cast<uint64_t>(ch - '0'))) return false;
  }
  return true;
}

std::string FormatDecimal(Limbs x) {
  if (x == Limbs{}) return "0";
  constexpr uint64_t kChunk = 10000000000000000000ULL;  // 10^19
  std::string digits;
  while (x != Limbs{}) {
    uint64_t rem = 0;
    for (int i = 3; i >= 0; --i) {
      const u128 cur = (static_cast<u128>(rem) << 64) | x[i];
      x[i] = static_cast<uint64_t>(cur / kChunk);
      rem = static_cast<uint64_t>(cur % kChunk);
    }
    const bool last = (x == Limbs{});
    for (int d = 0; d < 19; ++d) {
      if (last && rem == 0) break;
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Limbs HalfModulusFloor() {
  Limbs h = P;
  for (int i = 0; i < 4; ++i) {
    h[i] >>= 1;
    if (i < 3) h[i] |= (P[i + 1] & 1) << 63;
  }
  return h;
}

}  // namespace

FieldElement FieldElement::One() { return FromUint(1); }

FieldElement FieldElement::FromUint(uint64_t v) {
  FieldElement f;
  f.mont_ = MontMul(Limbs{v, 0, 0, 0}, kR2);
  return f;
}

FieldElement FieldElement::FromLimbs(const Limbs& limbs) {
  if (GreaterOrEqual(limbs, P)) throw FieldError("field element not reduced below modulus");
  FieldElement f;
  f.mont_ = MontMul(limbs, kR2);
  return f;
}

FieldElement FieldElement::FromDecimal(std::string_view decimal) {
  Limbs v;
  if (!ParseDecimal(decimal, v)) {
    throw FieldError("not a canonical decimal field element: '" + std::string(decimal) + "'");
  }
  return FromLimbs(v);
}

FieldElement FieldElement::FromBytes(const std::array<uint8_t, 32>& le_bytes) {
  Limbs v{};
  for (int i = 0; i < 32; ++i) v[i / 8] |= static_cast<uint64_t>(le_bytes[i]) << (8 * (i % 8));
  return FromLimbs(v);
}

FieldElement::Limbs FieldElement::ToLimbs() const { return MontMul(mont_, Limbs{1, 0, 0, 0}); }

std::string FieldElement::ToDecimal() const { return FormatDecimal(ToLimbs()); }

std::array<uint8_t, 32> FieldElement::ToBytes() const {
  const Limbs v = ToLimbs();
  std::array<uint8_t, 32> out{};
  for (int i = 0; i < 32; ++i) out[i] = static_cast<uint8_t>(v[i / 8] >> (8 * (i % 8)));
  return out;
}

bool FieldElement::IsOne() const { return *this == One(); }

FieldElement FieldElement::Pow(const Limbs& exponent) const {
  FieldElement result = One();
  for (int i = 3; i >= 0; --i) {
    for (int bit = 63; bit >= 0; --bit) {
      result = result * result;
      if ((exponent[i] >> bit) & 1) result = result * *this;
    }
  }
  return result;
}

FieldElement FieldElement::Inverse() const {
  if (IsZero()) throw FieldError("inverse of zero");
  Limbs e = P;
  SubInPlace(e, Limbs{2, 0, 0, 0});
  return Pow(e);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement r;
  r.mont_ = AddMod(mont_, o.mont_);
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  FieldElement r;
  r.mont_ = SubMod(mont_, o.mont_);
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldElement r;
  r.mont_ = MontMul(mont_, o.mont_);
  return r;
}

FieldElement FieldElement::operator-() const { return FieldElement() - *this; }

std::ostream& operator<<(std::ostream& os, const FieldElement& f) { return os << f.ToDecimal(); }

FieldElement EncodeSigned(int64_t s) {
  if (s >= 0) return FieldElement::FromUint(static_cast<uint64_t>(s));
  // Negate in unsigned arithmetic so INT64_MIN is handled.
  const uint64_t magnitude = ~static_cast<uint64_t>(s) + 1;
  return -FieldElement::FromUint(magnitude);
}

FieldElement EncodeSigned(std::string_view signed_decimal) {
  const bool negative = !signed_decimal.empty() && signed_decimal[0] == '-';
  const std::string_view digits = negative ? signed_decimal.substr(1) : signed_decimal;
  Limbs magnitude;
  if (!ParseDecimal(digits, magnitude)) {
    throw FieldError("not a signed decimal integer: '" + std::string(signed_decimal) + "'");
  }
  if (!GreaterOrEqual(HalfModulusFloor(), magnitude)) {
    throw FieldError("signed value outside the representable window |s| < p/2");
  }
  const FieldElement f = FieldElement::FromLimbs(magnitude);
  return negative ? -f : f;
}

int64_t DecodeSigned(const FieldElement& a, uint64_t bound) {
  if (bound == 0 || bound > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
    throw FieldError("decode bound must be in [1, 2^63 - 1]");
  }
  const Limbs v = a.ToLimbs();
  if (v[1] == 0 && v[2] == 0 && v[3] == 0 && v[0] <= bound) return static_cast<int64_t>(v[0]);
  const Limbs neg = (-a).ToLimbs();
  if (neg[1] == 0 && neg[2] == 0 && neg[3] == 0 && neg[0] <= bound) {
    return -static_cast<int64_t>(neg[0]);
  }
  throw FieldError("field element " + a.ToDecimal() + " outside signed window +/-" +
                   std::to_string(bound));
}

}  // namespace zkmsa
