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

#include "zkmsa/msa_circuit.h"

#include <random>

#include <gtest/gtest.h>

#include "support/instance_gen.h"
#include "zkmsa/error.h"
#include "zkmsa/oracle.h"

namespace zkmsa {
namespace {

FieldElement Fe(uint64_t v) { return FieldElement::FromUint(v); }
const Alphabet kDna = Alphabet::Dna();

std::vector<SignalId> AllocRow(CircuitBuilder& b, std::string_view prefix, size_t n) {
  std::vector<SignalId> row;
  for (size_t i = 0; i < n; ++i) {
    row.push_back(b.Alloc(Visibility::kPrivateInput, std::string(prefix) + std::to_string(i)));
  }
  return row;
}

void PutRow(InputMap& in, std::string_view prefix, const std::vector<uint8_t>& codes) {
  for (size_t i = 0; i < codes.size(); ++i) in[std::string(prefix) + std::to_string(i)] = Fe(codes[i]);
}

int64_t Signed(const FieldElement& v) { return DecodeSigned(v, 1000000); }

// Score sub-circuit over `rows` rows of width `len`.
struct ScoreHarness {
  ConstraintSystem cs;
  SignalId out;
  size_t nrows;

  ScoreHarness(size_t nrows_in, size_t len) : nrows(nrows_in) {
    CircuitBuilder b;
    std::vector<std::vector<SignalId>> rows;
    for (size_t k = 0; k < nrows; ++k) rows.push_back(AllocRow(b, "r" + std::to_string(k) + "_", len));
    out = nrows == 2 ? BuildPairScore(b, rows[0], rows[1]) : BuildMsaScore(b, rows);
    cs = b.Finalize();
  }

  int64_t Eval(const std::vector<std::string>& aln) const {
    InputMap in;
    for (size_t k = 0; k < nrows; ++k) PutRow(in, "r" + std::to_string(k) + "_", EncodeRow(kDna, aln[k], true));
    const Witness w = SynthesizeWitness(cs, in);
    EXPECT_TRUE(CheckSatisfied(cs, w));
    return Signed(w[out]);
  }
};

// One-sequence consistency grid.
struct GridHarness {
  ConstraintSystem cs;
  SignalId ok;
  size_t seq_len, aln_len;

  GridHarness(size_t s, size_t a) : seq_len(s), aln_len(a) {
    CircuitBuilder b;
    const auto seq = AllocRow(b, "s", s);
    const auto aln = AllocRow(b, "a", a);
    ok = BuildCheckAlnSeq(b, {seq}, {aln}).ok;
    cs = b.Finalize();
  }

  bool Accepts(std::string_view seq, std::string_view row) const {
    InputMap in;
    std::vector<uint8_t> codes = EncodeRow(kDna, seq, false);
    codes.resize(seq_len, 0);
    PutRow(in, "s", codes);
    PutRow(in, "a", EncodeRow(kDna, row, true));
    const Witness w = SynthesizeWitness(cs, in);
    EXPECT_TRUE(CheckSatisfied(cs, w));
    EXPECT_TRUE(w[ok].IsZero() || w[ok].IsOne());
    return w[ok].IsOne();
  }
};

TEST(ScoringTest, ColumnExamples) {
  CircuitBuilder b;
  const SignalId x = b.Alloc(Visibility::kPrivateInput, "x");
  const SignalId y = b.Alloc(Visibility::kPrivateInput, "y");
  const SignalId s = BuildScoringSystem(b, x, y);
  const ConstraintSystem cs = b.Finalize();
  const auto eval = [&](char u, char v) {
    return SynthesizeWitness(cs, {{"x", Fe(*kDna.Code(u))}, {"y", Fe(*kDna.Code(v))}})[s];
  };
  EXPECT_EQ(eval('A', 'A'), Fe(1));
  EXPECT_EQ(eval('A', 'C'), -Fe(1));
  EXPECT_EQ(eval('-', '-'), -Fe(1));
  EXPECT_EQ(eval('-', 'G'), -Fe(1));
  for (char u : std::string_view("ACGT-")) {
    for (char v : std::string_view("ACGT-")) EXPECT_EQ(Signed(eval(u, v)), oracle::ScoreColumn(u, v));
  }
}

TEST(ScoringTest, PairScoreExamples) {
  const ScoreHarness three(2, 3);
  EXPECT_EQ(three.Eval({"AC-", "A-C"}), -1);
  EXPECT_EQ(three.Eval({"---", "---"}), -3);
  EXPECT_EQ(three.Eval({"GTA", "GTA"}), 3);
}

TEST(ScoringTest, PairScoreAddsNoConstraintsBeyondColumns) {
  CircuitBuilder b;
  const auto r0 = AllocRow(b, "a", 7), r1 = AllocRow(b, "b", 7);
  BuildPairScore(b, r0, r1);
  EXPECT_EQ(b.num_nonlinear(), 9u * 7);
  EXPECT_EQ(b.num_constraints(), 9u * 7);
}

TEST(ScoringTest, MsaScoreExamples) {
  const ScoreHarness triple(3, 5);
  EXPECT_EQ(triple.Eval({"ACGTA", "ACGTA", "ACGTA"}), 15);
  const ScoreHarness four(4, 11);
  const std::vector<std::string> aln = {"GATTA-CA---", "GAT---CA---", "G-TTA-CA---", "-ATTAGCA---"};
  EXPECT_EQ(four.Eval(aln), oracle::SpScore(aln));
}

TEST(ScoringTest, MsaScoreMatchesOracleOnRandomAlignments) {
  std::mt19937_64 rng(31);
  const ScoreHarness h(4, 9);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> aln;
    for (int k = 0; k < 4; ++k) aln.push_back(testing::RandomSequence(rng, 9, "ACGT-"));
    ASSERT_EQ(h.Eval(aln), oracle::SpScore(aln));
  }
}

TEST(ScoringTest, CheckAlnScore) {
  CircuitBuilder b;
  const auto r0 = AllocRow(b, "a", 3), r1 = AllocRow(b, "b", 3);
  const SignalId score = b.Alloc(Visibility::kPublicInput, "score");
  const SignalId ok = BuildCheckAlnScore(b, {r0, r1}, score);
  const ConstraintSystem cs = b.Finalize();
  const auto eval = [&](int64_t claimed) {
    InputMap in{{"score", EncodeSigned(claimed)}};
    PutRow(in, "a", EncodeRow(kDna, "AC-", true));
    PutRow(in, "b", EncodeRow(kDna, "AC-", true));
    return SynthesizeWitness(cs, in)[ok];
  };
  // columns: +1 +1 -1
  EXPECT_EQ(eval(1), Fe(1));
  EXPECT_EQ(eval(2), Fe(0));
  EXPECT_EQ(eval(-1), Fe(0));
}

// ---------------------------------------------------------------------------
// Routing cells

struct CellHarness {
  ConstraintSystem cs;
  T1Outputs t1;
  SignalId t2;
  size_t t1_cost = 0, t2_cost = 0;

  CellHarness() {
    CircuitBuilder b;
    const SignalId e = b.Alloc(Visibility::kPrivateInput, "e");
    const SignalId r = b.Alloc(Visibility::kPrivateInput, "r");
    const SignalId c = b.Alloc(Visibility::kPrivateInput, "c");
    t1 = BuildT1(b, e, r, c);
    t1_cost = b.num_nonlinear();
    t2 = BuildT2(b, e, c);
    t2_cost = b.num_nonlinear() - t1_cost;
    cs = b.Finalize();
  }

  Witness Run(uint64_t e, char r, char c) const {
    const Witness w =
        SynthesizeWitness(cs, {{"e", Fe(e)}, {"r", Fe(*kDna.Code(r))}, {"c", Fe(*kDna.Code(c))}});
    EXPECT_TRUE(CheckSatisfied(cs, w));
    return w;
  }

  std::array<uint64_t, 3> T1(uint64_t e, char r, char c) const {
    const Witness w = Run(e, r, c);
    return {w[t1.es].IsOne(), w[t1.ese].IsOne(), w[t1.ee].IsOne()};
  }
};

TEST(RoutingTest, CellCosts) {
  const CellHarness h;
  EXPECT_EQ(h.t1_cost, 13u);
  EXPECT_EQ(h.t2_cost, 5u);
}

TEST(RoutingTest, T1Examples) {
  const CellHarness h;
  using Out = std::array<uint64_t, 3>;
  EXPECT_EQ(h.T1(1, 'G', 'G'), (Out{0, 1, 0}));
  EXPECT_EQ(h.T1(1, 'G', '-'), (Out{0, 0, 1}));
  EXPECT_EQ(h.T1(1, '-', 'A'), (Out{1, 0, 0}));
  EXPECT_EQ(h.T1(1, '-', '-'), (Out{1, 0, 0}));
  EXPECT_EQ(h.T1(1, 'G', 'T'), (Out{0, 0, 0}));
  for (char r : std::string_view("ACGT-")) {
    for (char c : std::string_view("ACGT-")) EXPECT_EQ(h.T1(0, r, c), (Out{0, 0, 0}));
  }
}

TEST(RoutingTest, T2Examples) {
  const CellHarness h;
  EXPECT_EQ(h.Run(1, '-', '-')[h.t2], Fe(1));
  EXPECT_EQ(h.Run(1, '-', 'A')[h.t2], Fe(0));
  EXPECT_EQ(h.Run(0, '-', '-')[h.t2], Fe(0));
}

TEST(RoutingTest, GattacaExamples) {
  const GridHarness h(8, 11);
  EXPECT_TRUE(h.Accepts("GATTACA", testing::PadRow("GAT-TA-CA", 11)));
  EXPECT_TRUE(h.Accepts("GATTACA", "--GATTA-CA-"));
  EXPECT_TRUE(h.Accepts("GATTACA", testing::PadRow("GATTACA-", 11)));
  EXPECT_FALSE(h.Accepts("GATTACA", testing::PadRow("CATTACA", 11)));
  const GridHarness small(2, 2);
  EXPECT_FALSE(small.Accepts("GA", "AG"));
  EXPECT_TRUE(small.Accepts("GA", "GA"));
}

TEST(RoutingTest, TerminalEdges) {
  // Letters end in the last column with the sequence filling seq_len.
  EXPECT_TRUE(GridHarness(3, 4).Accepts("ACG", "A-CG"));
  // Padded sequence whose letters end in the last column: boundary column.
  EXPECT_TRUE(GridHarness(5, 4).Accepts("ACG", "A-CG"));
  // Empty sequence, all-gap row: straight down, then T2 along the bottom.
  EXPECT_TRUE(GridHarness(3, 4).Accepts("", "----"));
  EXPECT_FALSE(GridHarness(3, 4).Accepts("", "-A--"));
}

TEST(RoutingTest, GridMatchesOracleExhaustively) {
  for (size_t s = 1; s <= 2; ++s) {
    for (size_t a = 1; a <= 4; ++a) {
      const GridHarness h(s, a);
      std::vector<std::string> rows{""};
      for (size_t j = 0; j < a; ++j) {
        std::vector<std::string> next;
        for (const auto& r : rows) {
          for (char ch : std::string_view("AC-")) next.push_back(r + ch);
        }
        rows = std::move(next);
      }
      std::vector<std::string> seqs{""};
      for (size_t n = 1; n <= s; ++n) {
        for (const auto& r : std::vector<std::string>(seqs)) {
          if (r.size() == n - 1) {
            seqs.push_back(r + 'A');
            seqs.push_back(r + 'C');
          }
        }
      }
      for (const auto& seq : seqs) {
        for (const auto& row : rows) {
          ASSERT_EQ(h.Accepts(seq, row), oracle::GridAccepts(seq, row, s, a)) << seq << "/" << row;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Main

TEST(MainTest, FourByEightByElevenCompiles) {
  const ConstraintSystem cs = BuildMain(CircuitParams::Make(4, 8, 11));
  const CircuitStats s = Stats(cs);
  EXPECT_EQ(s.nonlinear_constraints, ExpectedNonlinearConstraints(4, 8, 11));
  EXPECT_EQ(s.linear_constraints, kExpectedLinearConstraints);
  EXPECT_EQ(s.outputs, 1u);
}

TEST(MainTest, DefaultMaskPublishesSequencesAndScore) {
  const ConstraintSystem cs = BuildMain(CircuitParams::Make(4, 8, 11));
  std::vector<SignalId> expected;
  for (size_t k = 0; k < 4; ++k) {
    for (size_t i = 0; i < 8; ++i) expected.push_back(*cs.FindInput(SeqInputName(k, i)));
  }
  expected.push_back(*cs.FindInput(kScoreInputName));
  EXPECT_EQ(std::vector<SignalId>(cs.public_inputs().begin(), cs.public_inputs().end()), expected);
  for (const InputSlot& slot : cs.input_layout()) {
    if (slot.name.starts_with("aln[")) EXPECT_EQ(slot.visibility, Visibility::kPrivateInput);
  }
  EXPECT_EQ(cs.input_layout().size(), 4u * 8 + 4u * 11 + 1);
}

TEST(MainTest, HiddenSequenceMask) {
  CircuitParams p = CircuitParams::Make(4, 8, 11);
  p.visibility.seq_public[0] = false;
  const ConstraintSystem cs = BuildMain(p);
  EXPECT_EQ(cs.public_inputs().size(), 3u * 8 + 1);
  for (size_t i = 0; i < 8; ++i) {
    const SignalId s = *cs.FindInput(SeqInputName(0, i));
    for (SignalId pub : cs.public_inputs()) EXPECT_NE(pub, s);
  }
  // Constraint shape does not depend on the mask.
  EXPECT_EQ(Stats(cs).nonlinear_constraints, ExpectedNonlinearConstraints(4, 8, 11));
}

TEST(MainTest, InvalidParamsRejected) {
  EXPECT_THROW(BuildMain(CircuitParams::Make(1, 8, 11)), EncodingError);
  EXPECT_THROW(BuildMain(CircuitParams::Make(2, 0, 11)), EncodingError);
  EXPECT_THROW(BuildMain(CircuitParams::Make(2, 8, 0)), EncodingError);
  CircuitParams p = CircuitParams::Make(3, 2, 2);
  p.visibility.seq_public.pop_back();
  EXPECT_THROW(BuildMain(p), EncodingError);
}

MsaInstance FourByEleven() {
  MsaInstance inst;
  inst.seqs = {"GATTACA", "GATCA", "GTTACA", "ATTAGCA"};
  inst.aln = {"GATTA-CA---", "GAT---CA---", "G-TTA-CA---", "-ATTAGCA---"};
  inst.score = oracle::SpScore(inst.aln);
  return inst;
}

TEST(MainTest, FourByEightByElevenWitness) {
  const CircuitParams p = CircuitParams::Make(4, 8, 11);
  const MainCircuit m = BuildMainCircuit(p);
  MsaInstance inst = FourByEleven();
  ASSERT_TRUE(oracle::Validate(inst).valid);
  Witness w = SynthesizeWitness(m.cs, EncodeInstance(p, inst));
  EXPECT_TRUE(CheckSatisfied(m.cs, w));
  EXPECT_EQ(w[m.y], Fe(1));

  inst.score += 1;
  ASSERT_FALSE(oracle::Validate(inst).valid);
  w = SynthesizeWitness(m.cs, EncodeInstance(p, inst));
  EXPECT_TRUE(CheckSatisfied(m.cs, w));
  EXPECT_EQ(w[m.y], Fe(0));
  EXPECT_EQ(w[m.seq_ok], Fe(1));
}

TEST(MainTest, ClosedFormCountIsExact) {
  for (size_t n : {2, 3, 4}) {
    for (size_t s : {1, 2, 3, 5}) {
      for (size_t a : {1, 2, 4, 7}) {
        const CircuitStats st = Stats(BuildMain(CircuitParams::Make(n, s, a)));
        ASSERT_EQ(st.nonlinear_constraints, ExpectedNonlinearConstraints(n, s, a)) << n << s << a;
        ASSERT_EQ(st.linear_constraints, kExpectedLinearConstraints);
      }
    }
  }
}

TEST(MainTest, AffineInAlignmentLength) {
  const auto count = [](size_t a) {
    return static_cast<int64_t>(Stats(BuildMain(CircuitParams::Make(3, 4, a))).nonlinear_constraints);
  };
  const int64_t c3 = count(3), c6 = count(6), c9 = count(9);
  EXPECT_EQ(c9, c6 + (c6 - c3));
}

TEST(MainTest, DeterministicBuild) {
  const CircuitParams p = CircuitParams::Make(3, 3, 4);
  EXPECT_EQ(BuildMain(p).ToJson(), BuildMain(p).ToJson());
}

// Every satisfying witness of a random instance: enables are boolean and each
// T1 cell fires at most one outgoing edge.
TEST(MainTest, GridIsDeterministicInWitnesses) {
  std::mt19937_64 rng(41);
  const CircuitParams p = CircuitParams::Make(3, 5, 7);
  const MainCircuit m = BuildMainCircuit(p);
  const auto boolean = [](const FieldElement& v) { return v.IsZero() || v.IsOne(); };
  for (int t = 0; t < 30; ++t) {
    MsaInstance inst = testing::RandomValidInstance(rng, 3, 5, 7);
    if (t % 2) inst = testing::MutateLetter(rng, inst);
    const Witness w = SynthesizeWitness(m.cs, EncodeInstance(p, inst));
    ASSERT_TRUE(CheckSatisfied(m.cs, w));
    for (const SequenceGrid& g : m.grids) {
      for (size_t i = 0; i < p.seq_len; ++i) {
        for (size_t j = 0; j < p.aln_len; ++j) {
          ASSERT_TRUE(boolean(w[g.t1_enable[i][j]]));
          const T1Outputs& o = g.t1[i][j];
          ASSERT_TRUE(boolean(w[o.es]) && boolean(w[o.ese]) && boolean(w[o.ee]));
          const FieldElement fired = w[o.es] + w[o.ese] + w[o.ee];
          ASSERT_TRUE(fired.IsZero() || fired.IsOne());
        }
      }
      for (size_t j = 0; j < p.aln_len; ++j) ASSERT_TRUE(boolean(w[g.t2_enable[j]]));
      for (size_t i = 0; i < p.seq_len; ++i) ASSERT_TRUE(boolean(w[g.boundary_enable[i]]));
      ASSERT_TRUE(boolean(w[g.accept]));
    }
  }
}

TEST(MainTest, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(42);
  const CircuitParams p = CircuitParams::Make(3, 5, 7);
  const MainCircuit m = BuildMainCircuit(p);
  int valid = 0;
  for (int t = 0; t < 120; ++t) {
    MsaInstance inst = testing::RandomValidInstance(rng, 3, 5, 7);
    switch (t % 4) {
      case 1: inst = testing::MutateLetter(rng, inst); break;
      case 2: inst = testing::WrongScore(rng, inst, 7); break;
      case 3: inst = testing::ShuffleRows(rng, inst); break;
      default: break;
    }
    const bool expected = oracle::Validate(inst).valid;
    valid += expected;
    const Witness w = SynthesizeWitness(m.cs, EncodeInstance(p, inst));
    ASSERT_TRUE(CheckSatisfied(m.cs, w));
    ASSERT_EQ(w[m.y].IsOne(), expected) << t;
    ASSERT_EQ(w[m.msa_score], EncodeSigned(oracle::SpScore(inst.aln)));
  }
  EXPECT_GT(valid, 20);
}

// ---------------------------------------------------------------------------
// Encoding

TEST(EncodeTest, RowExamples) {
  EXPECT_EQ(EncodeRow(kDna, "GA-T", true), (std::vector<uint8_t>{3, 1, 0, 4}));
  EXPECT_THROW(EncodeRow(kDna, "GA-T", false), EncodingError);
  EXPECT_THROW(EncodeRow(kDna, "GAXT", true), EncodingError);
}

TEST(EncodeTest, InstanceExamples) {
  const CircuitParams p = CircuitParams::Make(2, 8, 9);
  MsaInstance inst{{"GATTACA", "GATTACA"}, {"GATTACA--", "GATTACA--"}, -5};
  const InputMap in = EncodeInstance(p, inst);
  EXPECT_EQ(in.at(SeqInputName(0, 0)), Fe(3));
  EXPECT_EQ(in.at(SeqInputName(0, 7)), Fe(0));
  EXPECT_EQ(in.at(AlnInputName(1, 8)), Fe(0));
  EXPECT_EQ(in.at(std::string(kScoreInputName)), -Fe(5));
  EXPECT_EQ(in.size(), 2u * 8 + 2u * 9 + 1);
}

TEST(EncodeTest, InstanceErrors) {
  const CircuitParams p = CircuitParams::Make(2, 4, 5);
  const MsaInstance good{{"ACG", "AC"}, {"ACG--", "A-C--"}, 0};
  EXPECT_NO_THROW(EncodeInstance(p, good));

  MsaInstance bad = good;
  bad.seqs[0] = "ACGTA";
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad = good;
  bad.seqs[1] = "A-C";
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad = good;
  bad.aln[0] = "ACG-";
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad = good;
  bad.aln[0] = "ACN--";
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad = good;
  bad.seqs.pop_back();
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad = good;
  bad.score = 6;  // C(2,2) * 5 = 5
  EXPECT_THROW(EncodeInstance(p, bad), EncodingError);
  bad.score = -5;
  EXPECT_NO_THROW(EncodeInstance(p, bad));
}

TEST(AlphabetTest, Construction) {
  EXPECT_EQ(kDna.Code('G'), 3);
  EXPECT_EQ(kDna.Code('-'), 0);
  EXPECT_FALSE(kDna.Code('N'));
  EXPECT_TRUE(kDna.IsLetter('T'));
  EXPECT_FALSE(kDna.IsLetter('-'));
  const Alphabet protein = Alphabet::Protein();
  EXPECT_EQ(protein.codes().size(), 20u);
  EXPECT_EQ(protein.Code('Y'), 20);
  EXPECT_THROW(Alphabet::FromCodes({{'A', 0}}), EncodingError);
  EXPECT_THROW(Alphabet::FromCodes({{'A', 1}, {'B', 1}}), EncodingError);
  EXPECT_THROW(Alphabet::FromCodes({{'-', 1}}), EncodingError);
  EXPECT_THROW(Alphabet::FromCodes({}), EncodingError);
}

TEST(AlphabetTest, ProteinCircuitEndToEnd) {
  CircuitParams p = CircuitParams::Make(2, 4, 6);
  p.alphabet = Alphabet::Protein();
  const MainCircuit m = BuildMainCircuit(p);
  MsaInstance inst{{"WYK", "WK"}, {"WYK---", "W-K---"}, 0};
  inst.score = oracle::SpScore(inst.aln);
  EXPECT_EQ(SynthesizeWitness(m.cs, EncodeInstance(p, inst))[m.y], Fe(1));
  inst.aln[1] = "KW----";
  inst.score = oracle::SpScore(inst.aln);
  EXPECT_EQ(SynthesizeWitness(m.cs, EncodeInstance(p, inst))[m.y], Fe(0));
}

}  // namespace
}  // namespace zkmsa
