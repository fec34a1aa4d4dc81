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

#include "zkmsa/backend.h"

#include <algorithm>
#include <ostream>

#include <nlohmann/json.hpp>

#include "digest.h"
#include "zkmsa/error.h"

namespace zkmsa {
namespace {

constexpr std::string_view kDevSetupDomain = "zkmsa/dev-setup/v1";

class ByteWriter {
 public:
  void Put(std::span<const uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  void Put(const BackendTag& tag) {
    for (char c : tag) out_.push_back(static_cast<uint8_t>(c));
  }
  void PutU32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void PutU64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  std::span<const uint8_t> Get(size_t n) {
    if (data_.size() - pos_ < n) throw BackendError("truncated key or proof data");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  BackendTag GetTag() {
    BackendTag tag;
    auto s = Get(4);
    std::copy(s.begin(), s.end(), tag.begin());
    return tag;
  }
  Fingerprint GetFingerprint() {
    Fingerprint fp;
    auto s = Get(32);
    std::copy(s.begin(), s.end(), fp.begin());
    return fp;
  }
  uint64_t GetUint(int bytes) {
    uint64_t v = 0;
    auto s = Get(static_cast<size_t>(bytes));
    for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(s[i]) << (8 * i);
    return v;
  }
  void ExpectEnd() const {
    if (pos_ != data_.size()) throw BackendError("trailing bytes after key or proof data");
  }

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

std::string TagString(const BackendTag& tag) { return std::string(tag.begin(), tag.end()); }

std::vector<uint8_t> EncodeWitness(const Witness& w) {
  ByteWriter out;
  out.PutU64(w.values.size());
  for (const FieldElement& v : w.values) out.Put(v.ToBytes());
  return out.Take();
}

Witness DecodeWitness(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  const uint64_t n = in.GetUint(8);
  if (n > bytes.size() / 32) throw BackendError("witness payload length is inconsistent");
  Witness w;
  w.values.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::array<uint8_t, 32> le{};
    auto s = in.Get(32);
    std::copy(s.begin(), s.end(), le.begin());
    w.values.push_back(FieldElement::FromBytes(le));
  }
  in.ExpectEnd();
  return w;
}

}  // namespace

Fingerprint CircuitFingerprint(const ConstraintSystem& cs) {
  internal::Sha256 hash;
  {
    internal::HashingStreambuf buf(hash);
    std::ostream os(&buf);
    cs.WriteJson(os);
    os.flush();
  }
  return hash.Final();
}

std::string ToHex(std::span<const uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

std::vector<uint8_t> FromHex(std::string_view hex) {
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw BackendError("hex string has odd length");
  std::vector<uint8_t> out;
  for (size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw BackendError("invalid hex digit");
    out.push_back(static_cast<uint8_t>(hi * 16 + lo));
  }
  return out;
}

std::vector<FieldElement> PublicValues(const ConstraintSystem& cs, const Witness& w) {
  std::vector<FieldElement> out;
  for (SignalId s : cs.public_inputs()) out.push_back(w[s]);
  for (SignalId s : cs.outputs()) out.push_back(w[s]);
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::vector<uint8_t> SerializeProvingKey(const ProvingKey& pk) {
  ByteWriter out;
  out.Put(pk.backend);
  out.Put(pk.fingerprint);
  out.PutU64(pk.payload.size());
  out.Put(pk.payload);
  return out.Take();
}

ProvingKey ParseProvingKey(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  ProvingKey pk;
  pk.backend = in.GetTag();
  pk.fingerprint = in.GetFingerprint();
  const uint64_t n = in.GetUint(8);
  auto payload = in.Get(n);
  pk.payload.assign(payload.begin(), payload.end());
  in.ExpectEnd();
  return pk;
}

std::vector<uint8_t> SerializeVerifyingKey(const VerifyingKey& vk) {
  ByteWriter out;
  out.Put(vk.backend);
  out.Put(vk.fingerprint);
  out.PutU32(vk.public_count);
  out.PutU64(vk.payload.size());
  out.Put(vk.payload);
  return out.Take();
}

VerifyingKey ParseVerifyingKey(std::span<const uint8_t> bytes) {
  ByteReader in(bytes);
  VerifyingKey vk;
  vk.backend = in.GetTag();
  vk.fingerprint = in.GetFingerprint();
  vk.public_count = static_cast<uint32_t>(in.GetUint(4));
  const uint64_t n = in.GetUint(8);
  auto payload = in.Get(n);
  vk.payload.assign(payload.begin(), payload.end());
  in.ExpectEnd();
  return vk;
}

std::string ProofToJson(const Proof& proof) {
  nlohmann::ordered_json doc;
  doc["backend"] = TagString(proof.backend);
  doc["fingerprint"] = ToHex(proof.fingerprint);
  doc["public_values"] = nlohmann::ordered_json::array();
  for (const FieldElement& v : proof.public_values) doc["public_values"].push_back(v.ToDecimal());
  doc["payload"] = internal::Base64Encode(proof.payload);
  return doc.dump();
}

Proof ProofFromJson(std::string_view text) {
  try {
    const auto doc = nlohmann::ordered_json::parse(text);
    Proof proof;
    const std::string tag = doc.at("backend").get<std::string>();
    if (tag.size() != 4) throw BackendError("backend tag must be 4 characters");
    std::copy(tag.begin(), tag.end(), proof.backend.begin());
    const std::vector<uint8_t> fp = FromHex(doc.at("fingerprint").get<std::string>());
    if (fp.size() != 32) throw BackendError("fingerprint must be 32 bytes");
    std::copy(fp.begin(), fp.end(), proof.fingerprint.begin());
    for (const auto& v : doc.at("public_values")) {
      proof.public_values.push_back(FieldElement::FromDecimal(v.get<std::string>()));
    }
    proof.payload = internal::Base64Decode(doc.at("payload").get<std::string>());
    return proof;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed proof envelope: ") + e.what());
  } catch (const FieldError& e) {
    throw BackendError(std::string("malformed proof envelope: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// DevBackend

std::string DevBackend::Describe() const {
  return "dev: development backend; the proof embeds the full witness and verification re-checks "
         "every constraint. It is NOT zero-knowledge and must not be used to hide an alignment.";
}

KeyPair DevBackend::Setup(const ConstraintSystem& cs, std::span<const uint8_t> entropy) const {
  const std::string canonical = cs.ToJson();
  internal::Sha256 fp_hash;
  fp_hash.Update(canonical);
  const Fingerprint fp = fp_hash.Final();

  internal::Sha256 secret;
  secret.Update(kDevSetupDomain);
  secret.Update(fp);
  secret.Update(entropy);
  const auto toxic = secret.Final();

  KeyPair keys;
  keys.pk = ProvingKey{kDevBackendTag, fp, std::vector<uint8_t>(toxic.begin(), toxic.end())};
  keys.vk.backend = kDevBackendTag;
  keys.vk.fingerprint = fp;
  keys.vk.public_count = static_cast<uint32_t>(cs.public_inputs().size() + cs.outputs().size());
  keys.vk.payload.assign(canonical.begin(), canonical.end());
  return keys;
}

Proof DevBackend::Prove(const ProvingKey& pk, const ConstraintSystem& cs, const Witness& w) const {
  if (pk.backend != kDevBackendTag) {
    throw BackendError("proving key belongs to backend " + TagString(pk.backend));
  }
  const Fingerprint fp = CircuitFingerprint(cs);
  if (pk.fingerprint != fp) throw BackendError("proving key was set up for a different circuit");
  if (w.values.size() != cs.num_signals() || !CheckSatisfied(cs, w)) {
    throw BackendError("witness does not satisfy the constraint system");
  }
  Proof proof;
  proof.backend = kDevBackendTag;
  proof.fingerprint = fp;
  proof.public_values = PublicValues(cs, w);
  proof.payload = EncodeWitness(w);
  return proof;
}

std::shared_ptr<const ConstraintSystem> DevBackend::LoadCircuit(const VerifyingKey& vk) const {
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = cache_.find(vk.fingerprint);
    if (it != cache_.end()) return it->second;
  }
  internal::Sha256 hash;
  hash.Update(vk.payload);
  if (hash.Final() != vk.fingerprint) {
    throw BackendError("verifying key payload does not match its fingerprint");
  }
  const std::string_view text(reinterpret_cast<const char*>(vk.payload.data()), vk.payload.size());
  auto cs = std::make_shared<const ConstraintSystem>(ConstraintSystem::FromJson(text));
  std::lock_guard<std::mutex> lock(cache_mu_);
  cache_.emplace(vk.fingerprint, cs);
  return cs;
}

bool DevBackend::Verify(const VerifyingKey& vk, std::span<const FieldElement> public_values,
                        const Proof& proof) const {
  if (public_values.size() != vk.public_count) {
    throw BackendError("expected " + std::to_string(vk.public_count) + " public values, got " +
                       std::to_string(public_values.size()));
  }
  if (vk.backend != kDevBackendTag) {
    throw BackendError("verifying key belongs to backend " + TagString(vk.backend));
  }
  if (proof.backend != kDevBackendTag || proof.fingerprint != vk.fingerprint) return false;
  if (!std::equal(proof.public_values.begin(), proof.public_values.end(), public_values.begin(),
                  public_values.end())) {
    return false;
  }

  const auto cs = LoadCircuit(vk);
  Witness w;
  try {
    w = DecodeWitness(proof.payload);
  } catch (const Error&) {
    return false;
  }
  if (w.values.size() != cs->num_signals() || !CheckSatisfied(*cs, w)) return false;
  const std::vector<FieldElement> bound = PublicValues(*cs, w);
  return std::equal(bound.begin(), bound.end(), public_values.begin(), public_values.end());
}

std::unique_ptr<Backend> MakeBackend(std::string_view name, const std::string& external_command) {
  if (name == "dev") return std::make_unique<DevBackend>();
  if (name == "external") {
    if (external_command.empty()) {
      throw BackendError("the external backend needs a prover command");
    }
    return std::make_unique<ExternalBackend>(external_command);
  }
  throw BackendError("unknown backend '" + std::string(name) + "'");
}

}  // namespace zkmsa
