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

#ifndef ZKMSA_BACKEND_H_
#define ZKMSA_BACKEND_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zkmsa/field.h"
#include "zkmsa/r1cs.h"

namespace zkmsa {

using Fingerprint = std::array<uint8_t, 32>;
using BackendTag = std::array<char, 4>;

inline constexpr BackendTag kDevBackendTag = {'D', 'E', 'V', '1'};
inline constexpr BackendTag kExternalBackendTag = {'E', 'X', 'T', '1'};

// SHA-256 of the canonical JSON export of `cs`.
Fingerprint CircuitFingerprint(const ConstraintSystem& cs);
std::string ToHex(std::span<const uint8_t> bytes);
std::vector<uint8_t> FromHex(std::string_view hex);

// Public inputs followed by outputs, read from the witness.
std::vector<FieldElement> PublicValues(const ConstraintSystem& cs, const Witness& w);

struct ProvingKey {
  BackendTag backend{};
  Fingerprint fingerprint{};
  std::vector<uint8_t> payload;

  bool operator==(const ProvingKey&) const = default;
};

struct VerifyingKey {
  BackendTag backend{};
  Fingerprint fingerprint{};
  uint32_t public_count = 0;
  std::vector<uint8_t> payload;

  bool operator==(const VerifyingKey&) const = default;
};

struct Proof {
  BackendTag backend{};
  Fingerprint fingerprint{};
  std::vector<FieldElement> public_values;
  std::vector<uint8_t> payload;

  bool operator==(const Proof&) const = default;
};

struct KeyPair {
  ProvingKey pk;
  VerifyingKey vk;
};

// Binary key files: tag(4) | fingerprint(32) | [public_count u32 LE, vk
// only] | payload length u64 LE | payload.
std::vector<uint8_t> SerializeProvingKey(const ProvingKey& pk);
ProvingKey ParseProvingKey(std::span<const uint8_t> bytes);
std::vector<uint8_t> SerializeVerifyingKey(const VerifyingKey& vk);
VerifyingKey ParseVerifyingKey(std::span<const uint8_t> bytes);

// {"backend", "fingerprint", "public_values": [decimal], "payload": base64}
std::string ProofToJson(const Proof& proof);
Proof ProofFromJson(std::string_view text);

// Prove/verify pipeline. Implementations are stateless from the caller's
// point of view; keys and proofs are plain values and calls may run
// concurrently.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendTag tag() const = 0;
  virtual std::string Describe() const = 0;

  // Deterministic in (cs, entropy).
  virtual KeyPair Setup(const ConstraintSystem& cs, std::span<const uint8_t> entropy) const = 0;

  // Throws BackendError if pk was made for another circuit or backend, or if
  // the witness does not satisfy cs.
  virtual Proof Prove(const ProvingKey& pk, const ConstraintSystem& cs, const Witness& w) const = 0;

  // Throws BackendError if public_values does not have vk.public_count
  // entries; otherwise returns whether the proof is accepted.
  virtual bool Verify(const VerifyingKey& vk, std::span<const FieldElement> public_values,
                      const Proof& proof) const = 0;
};

// Development backend. The proof carries the whole witness and verification
// replays the constraint system stored in the verifying key. Complete and
// binding on public values, but NOT zero-knowledge.
class DevBackend final : public Backend {
 public:
  BackendTag tag() const override { return kDevBackendTag; }
  std::string Describe() const override;
  KeyPair Setup(const ConstraintSystem& cs, std::span<const uint8_t> entropy) const override;
  Proof Prove(const ProvingKey& pk, const ConstraintSystem& cs, const Witness& w) const override;
  bool Verify(const VerifyingKey& vk, std::span<const FieldElement> public_values,
              const Proof& proof) const override;

 private:
  std::shared_ptr<const ConstraintSystem> LoadCircuit(const VerifyingKey& vk) const;

  mutable std::mutex cache_mu_;
  mutable std::map<Fingerprint, std::shared_ptr<const ConstraintSystem>> cache_;
};

// Adapter for an out-of-process prover (e.g. a Groth16 toolchain) driven
// through files in a scratch directory:
//
//   <cmd> setup  circuit.json entropy.bin pk.bin vk.bin
//   <cmd> prove  circuit.json pk.bin witness.json proof.bin
//   <cmd> verify vk.bin public.json proof.bin      exit 0 accept, 1 reject
//
// circuit.json and witness.json use the r1cs JSON exports; public.json is
// an array of decimal strings. Key and proof files are opaque bytes.
class ExternalBackend final : public Backend {
 public:
  explicit ExternalBackend(std::string command);

  BackendTag tag() const override { return kExternalBackendTag; }
  std::string Describe() const override;
  KeyPair Setup(const ConstraintSystem& cs, std::span<const uint8_t> entropy) const override;
  Proof Prove(const ProvingKey& pk, const ConstraintSystem& cs, const Witness& w) const override;
  bool Verify(const VerifyingKey& vk, std::span<const FieldElement> public_values,
              const Proof& proof) const override;

 private:
  int Run(const std::vector<std::string>& args) const;

  std::string command_;
};

// "dev" or "external" (the latter needs a command). Throws BackendError.
std::unique_ptr<Backend> MakeBackend(std::string_view name, const std::string& external_command = {});

}  // namespace zkmsa

#endif  // ZKMSA_BACKEND_H_
