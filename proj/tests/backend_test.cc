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

#include <random>

#include <gtest/gtest.h>

#include "support/instance_gen.h"
#include "zkmsa/error.h"
#include "zkmsa/msa_circuit.h"
#include "zkmsa/oracle.h"

namespace zkmsa {
namespace {

std::vector<uint8_t> Bytes(std::string_view s) { return std::vector<uint8_t>(s.begin(), s.end()); }

struct Fixture {
  CircuitParams params = CircuitParams::Make(2, 3, 4);
  ConstraintSystem cs = BuildMain(params);

  Witness WitnessFor(const MsaInstance& inst) const {
    return SynthesizeWitness(cs, EncodeInstance(params, inst));
  }
};

MsaInstance SmallValid() {
  MsaInstance inst{{"ACG", "AG"}, {"ACG-", "A-G-"}, 0};
  inst.score = oracle::SpScore(inst.aln);
  return inst;
}

class BackendTest : public ::testing::TestWithParam<std::string> {
 protected:
  std::unique_ptr<Backend> backend_ = MakeBackend(GetParam(), ZKMSA_FAKE_PROVER);
  Fixture f_;
};

TEST_P(BackendTest, HonestRoundTrip) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  const Witness w = f_.WitnessFor(SmallValid());
  const Proof proof = backend_->Prove(keys.pk, f_.cs, w);
  ASSERT_EQ(proof.public_values.size(), keys.vk.public_count);
  EXPECT_TRUE(proof.public_values.back().IsOne());
  EXPECT_TRUE(backend_->Verify(keys.vk, proof.public_values, proof));
}

TEST_P(BackendTest, SetupIsDeterministicInEntropy) {
  const KeyPair a = backend_->Setup(f_.cs, Bytes("seed"));
  const KeyPair b = backend_->Setup(f_.cs, Bytes("seed"));
  const KeyPair c = backend_->Setup(f_.cs, Bytes("other"));
  EXPECT_EQ(a.pk, b.pk);
  EXPECT_EQ(a.vk, b.vk);
  EXPECT_NE(a.pk.payload, c.pk.payload);
  EXPECT_EQ(a.pk.fingerprint, CircuitFingerprint(f_.cs));
}

TEST_P(BackendTest, KeysForAnotherCircuitRejected) {
  const ConstraintSystem other = BuildMain(CircuitParams::Make(2, 3, 5));
  const KeyPair keys = backend_->Setup(other, Bytes("seed"));
  EXPECT_THROW(backend_->Prove(keys.pk, f_.cs, f_.WitnessFor(SmallValid())), BackendError);
}

TEST_P(BackendTest, UnsatisfiedWitnessRejected) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  Witness w = f_.WitnessFor(SmallValid());
  w.values.back() += FieldElement::One();
  for (size_t i = 1; i < w.values.size() && CheckSatisfied(f_.cs, w); ++i) {
    w.values[i] += FieldElement::One();
  }
  ASSERT_FALSE(CheckSatisfied(f_.cs, w));
  EXPECT_THROW(backend_->Prove(keys.pk, f_.cs, w), BackendError);
}

TEST_P(BackendTest, WrongScoreProvesOutputZero) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  MsaInstance inst = SmallValid();
  inst.score += 1;
  const Proof proof = backend_->Prove(keys.pk, f_.cs, f_.WitnessFor(inst));
  EXPECT_TRUE(proof.public_values.back().IsZero());
  EXPECT_TRUE(backend_->Verify(keys.vk, proof.public_values, proof));
}

TEST_P(BackendTest, EveryPublicPositionIsBound) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  const Proof proof = backend_->Prove(keys.pk, f_.cs, f_.WitnessFor(SmallValid()));
  for (size_t i = 0; i < proof.public_values.size(); ++i) {
    std::vector<FieldElement> tampered = proof.public_values;
    tampered[i] += FieldElement::One();
    EXPECT_FALSE(backend_->Verify(keys.vk, tampered, proof)) << "position " << i;
  }
}

TEST_P(BackendTest, PublicCountMismatchThrows) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  const Proof proof = backend_->Prove(keys.pk, f_.cs, f_.WitnessFor(SmallValid()));
  std::vector<FieldElement> shorter = proof.public_values;
  shorter.pop_back();
  EXPECT_THROW(backend_->Verify(keys.vk, shorter, proof), BackendError);
}

TEST_P(BackendTest, KeyAndProofSerializationRoundTrip) {
  const KeyPair keys = backend_->Setup(f_.cs, Bytes("seed"));
  const Proof proof = backend_->Prove(keys.pk, f_.cs, f_.WitnessFor(SmallValid()));
  const ProvingKey pk = ParseProvingKey(SerializeProvingKey(keys.pk));
  const VerifyingKey vk = ParseVerifyingKey(SerializeVerifyingKey(keys.vk));
  const Proof back = ProofFromJson(ProofToJson(proof));
  EXPECT_EQ(pk, keys.pk);
  EXPECT_EQ(vk, keys.vk);
  EXPECT_EQ(back, proof);
  EXPECT_TRUE(backend_->Verify(vk, back.public_values, back));
}

INSTANTIATE_TEST_SUITE_P(Backends, BackendTest, ::testing::Values("dev", "external"));

TEST(DevBackendTest, DescribesItselfAsNotZeroKnowledge) {
  EXPECT_NE(DevBackend().Describe().find("NOT zero-knowledge"), std::string::npos);
}

TEST(DevBackendTest, CompletenessOnRandomInstances) {
  const DevBackend dev;
  std::mt19937_64 rng(51);
  const CircuitParams p = CircuitParams::Make(3, 4, 6);
  const ConstraintSystem cs = BuildMain(p);
  const KeyPair keys = dev.Setup(cs, Bytes("seed"));
  for (int t = 0; t < 100; ++t) {
    const MsaInstance inst = testing::RandomValidInstance(rng, 3, 4, 6);
    ASSERT_TRUE(oracle::Validate(inst).valid);
    const Proof proof = dev.Prove(keys.pk, cs, SynthesizeWitness(cs, EncodeInstance(p, inst)));
    ASSERT_TRUE(proof.public_values.back().IsOne());
    ASSERT_TRUE(dev.Verify(keys.vk, proof.public_values, proof));
  }
}

TEST(DevBackendTest, ForgedWitnessPayloadRejected) {
  const DevBackend dev;
  Fixture f;
  const KeyPair keys = dev.Setup(f.cs, Bytes("seed"));
  Proof proof = dev.Prove(keys.pk, f.cs, f.WitnessFor(SmallValid()));
  // Low byte of signal 1 (the first public sequence cell); length prefix is 8.
  proof.payload[8 + 32] ^= 1;
  EXPECT_FALSE(dev.Verify(keys.vk, proof.public_values, proof));
  proof.payload.resize(3);
  EXPECT_FALSE(dev.Verify(keys.vk, proof.public_values, proof));
}

TEST(DevBackendTest, MismatchedKeyPayloadRejected) {
  const DevBackend dev;
  Fixture f;
  KeyPair keys = dev.Setup(f.cs, Bytes("seed"));
  const Proof proof = dev.Prove(keys.pk, f.cs, f.WitnessFor(SmallValid()));
  keys.vk.fingerprint[0] ^= 1;
  EXPECT_FALSE(dev.Verify(keys.vk, proof.public_values, proof));
  Proof relabeled = proof;
  relabeled.fingerprint = keys.vk.fingerprint;
  EXPECT_THROW(dev.Verify(keys.vk, proof.public_values, relabeled), BackendError);
}

TEST(DevBackendTest, CrossBackendKeysRejected) {
  Fixture f;
  const KeyPair ext = ExternalBackend(ZKMSA_FAKE_PROVER).Setup(f.cs, Bytes("seed"));
  EXPECT_THROW(DevBackend().Prove(ext.pk, f.cs, f.WitnessFor(SmallValid())), BackendError);
}

TEST(SerializationTest, MalformedInputsRejected) {
  ProvingKey pk{kDevBackendTag, {}, {1, 2, 3}};
  std::vector<uint8_t> bytes = SerializeProvingKey(pk);
  EXPECT_EQ(bytes.size(), 4u + 32 + 8 + 3);
  bytes.push_back(0);
  EXPECT_THROW(ParseProvingKey(bytes), BackendError);
  bytes.resize(10);
  EXPECT_THROW(ParseProvingKey(bytes), BackendError);
  EXPECT_THROW(ParseVerifyingKey(std::vector<uint8_t>{}), BackendError);
  EXPECT_THROW(ProofFromJson("{}"), BackendError);
  EXPECT_THROW(ProofFromJson("not json"), BackendError);
  EXPECT_THROW(ProofFromJson(R"({"backend":"DEV1","fingerprint":"00","public_values":[],"payload":""})"),
               BackendError);
}

TEST(SerializationTest, HexRoundTrip) {
  const std::vector<uint8_t> bytes{0, 1, 0xab, 0xff};
  EXPECT_EQ(ToHex(bytes), "0001abff");
  EXPECT_EQ(FromHex("0001ABff"), bytes);
  EXPECT_THROW(FromHex("abc"), BackendError);
  EXPECT_THROW(FromHex("zz"), BackendError);
}

TEST(FingerprintTest, TracksCircuitShape) {
  EXPECT_EQ(CircuitFingerprint(BuildMain(CircuitParams::Make(2, 3, 4))),
            CircuitFingerprint(BuildMain(CircuitParams::Make(2, 3, 4))));
  EXPECT_NE(CircuitFingerprint(BuildMain(CircuitParams::Make(2, 3, 4))),
            CircuitFingerprint(BuildMain(CircuitParams::Make(2, 4, 3))));
  CircuitParams hidden = CircuitParams::Make(2, 3, 4);
  hidden.visibility.score_public = false;
  EXPECT_NE(CircuitFingerprint(BuildMain(hidden)),
            CircuitFingerprint(BuildMain(CircuitParams::Make(2, 3, 4))));
}

TEST(MakeBackendTest, Names) {
  EXPECT_EQ(MakeBackend("dev")->tag(), kDevBackendTag);
  EXPECT_EQ(MakeBackend("external", "prover")->tag(), kExternalBackendTag);
  EXPECT_THROW(MakeBackend("external"), BackendError);
  EXPECT_THROW(MakeBackend("groth16"), BackendError);
}

}  // namespace
}  // namespace zkmsa
