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

#include "cli.h"

#include <atomic>
#include <fstream>
#include <functional>
#include <iterator>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fasta.h"
#include "zkmsa/backend.h"
#include "zkmsa/error.h"
#include "zkmsa/msa_circuit.h"
#include "zkmsa/oracle.h"
#include "zkmsa/r1cs.h"

namespace zkmsa::cli {
namespace {

using nlohmann::ordered_json;

// Unreadable or unwritable files; reported with exit code 2 like any other
// format problem.
class FileError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

std::vector<uint8_t> ReadBinary(const std::string& path) {
  const std::string data = ReadFile(path);
  return std::vector<uint8_t>(data.begin(), data.end());
}

template <typename Writer>
void WriteFile(const std::string& path, Writer&& write) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FileError("cannot write " + path);
  write(f);
  if (!f) throw FileError("error while writing " + path);
}

void WriteBinary(const std::string& path, std::span<const uint8_t> bytes) {
  WriteFile(path, [&](std::ostream& os) {
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  });
}

ordered_json ParseJson(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw EncodingError(what + " is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Alphabets, params, instances

Alphabet LoadAlphabet(const std::string& spec) {
  if (spec == "dna") return Alphabet::Dna();
  if (spec == "protein") return Alphabet::Protein();
  const ordered_json doc = ParseJson(ReadFile(spec), "alphabet file " + spec);
  if (!doc.is_object()) throw EncodingError("alphabet file must map letters to codes");
  std::map<char, uint8_t> codes;
  for (const auto& [letter, code] : doc.items()) {
    if (letter.size() != 1 || !code.is_number_unsigned() || code.get<uint64_t>() > 255) {
      throw EncodingError("alphabet entry '" + letter + "' must map one letter to a code in 1..255");
    }
    codes[letter[0]] = static_cast<uint8_t>(code.get<uint64_t>());
  }
  return Alphabet::FromCodes(codes);
}

ordered_json AlphabetToJson(const Alphabet& a) {
  ordered_json out = ordered_json::object();
  for (const auto& [ch, code] : a.codes()) out[std::string(1, ch)] = code;
  return out;
}

ordered_json ParamsToJson(const CircuitParams& p) {
  ordered_json out;
  out["nseq"] = p.nseq;
  out["seq_len"] = p.seq_len;
  out["aln_len"] = p.aln_len;
  out["alphabet"] = AlphabetToJson(p.alphabet);
  out["seq_public"] = p.visibility.seq_public;
  out["score_public"] = p.visibility.score_public;
  return out;
}

CircuitParams ParamsFromJson(const ordered_json& doc) {
  try {
    CircuitParams p = CircuitParams::Make(doc.at("nseq").get<size_t>(), doc.at("seq_len").get<size_t>(),
                                          doc.at("aln_len").get<size_t>());
    if (doc.contains("alphabet")) {
      std::map<char, uint8_t> codes;
      for (const auto& [letter, code] : doc.at("alphabet").items()) {
        if (letter.size() != 1) throw EncodingError("alphabet keys must be single letters");
        codes[letter[0]] = code.get<uint8_t>();
      }
      p.alphabet = Alphabet::FromCodes(codes);
    }
    if (doc.contains("seq_public")) {
      p.visibility.seq_public = doc.at("seq_public").get<std::vector<bool>>();
    }
    if (doc.contains("score_public")) p.visibility.score_public = doc.at("score_public").get<bool>();
    p.Validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw EncodingError(std::string("malformed params: ") + e.what());
  }
}

struct InstanceFile {
  MsaInstance inst;
  std::optional<ordered_json> params;
};

InstanceFile LoadInstance(const std::string& path) {
  const ordered_json doc = ParseJson(ReadFile(path), "instance file " + path);
  try {
    InstanceFile f;
    f.inst.seqs = doc.at("seq").get<std::vector<std::string>>();
    f.inst.aln = doc.at("aln").get<std::vector<std::string>>();
    f.inst.score = doc.at("score").get<int64_t>();
    if (doc.contains("params")) f.params = doc.at("params");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw EncodingError("malformed instance file " + path + ": " + e.what());
  }
}

std::string InstanceToJson(const MsaInstance& inst) {
  ordered_json doc;
  doc["seq"] = inst.seqs;
  doc["aln"] = inst.aln;
  doc["score"] = inst.score;
  return doc.dump(2) + "\n";
}

// Ragged rows and gaps in sequences are format errors, not invalid instances.
void RequireWellFormed(const MsaInstance& inst, const Alphabet& alphabet) {
  if (inst.seqs.size() != inst.aln.size()) {
    throw EncodingError("instance has " + std::to_string(inst.seqs.size()) + " sequences but " +
                        std::to_string(inst.aln.size()) + " alignment rows");
  }
  if (inst.aln.size() < 2) throw EncodingError("instance needs at least two sequences");
  for (size_t k = 0; k < inst.aln.size(); ++k) {
    if (inst.aln[k].size() != inst.aln[0].size()) {
      throw EncodingError("alignment row " + std::to_string(k) + " has length " +
                          std::to_string(inst.aln[k].size()) + ", row 0 has " +
                          std::to_string(inst.aln[0].size()));
    }
    EncodeRow(alphabet, inst.seqs[k], false);
    EncodeRow(alphabet, inst.aln[k], true);
  }
}

// ---------------------------------------------------------------------------
// Circuit files: {"params": {...}, "r1cs": <canonical constraint system>}

void WriteCircuitFile(std::ostream& os, const CircuitParams& p, const ConstraintSystem& cs) {
  os << "{\"params\":" << ParamsToJson(p).dump() << ",\"r1cs\":";
  cs.WriteJson(os);
  os << "}\n";
}

struct CircuitFile {
  CircuitParams params;
  ConstraintSystem cs;
};

CircuitFile LoadCircuit(const std::string& path) {
  const ordered_json doc = ParseJson(ReadFile(path), "circuit file " + path);
  if (!doc.is_object() || !doc.contains("params") || !doc.contains("r1cs")) {
    throw EncodingError("circuit file " + path + " needs \"params\" and \"r1cs\"");
  }
  return CircuitFile{ParamsFromJson(doc["params"]), ConstraintSystem::FromJsonValue(doc["r1cs"])};
}

// ---------------------------------------------------------------------------
// Stats

ordered_json StatsJson(const CircuitParams& p, const CircuitStats& s) {
  ordered_json out;
  out["nseq"] = p.nseq;
  out["seq_len"] = p.seq_len;
  out["aln_len"] = p.aln_len;
  out["nonlinear"] = s.nonlinear_constraints;
  out["linear"] = s.linear_constraints;
  out["wires"] = s.wires;
  out["public_inputs"] = s.public_inputs;
  out["private_inputs"] = s.private_inputs;
  out["outputs"] = s.outputs;
  return out;
}

void PrintStats(std::ostream& out, const CircuitParams& p, const CircuitStats& s) {
  out << "circuit Main(" << p.nseq << "," << p.seq_len << "," << p.aln_len << ")\n"
      << "  non-linear constraints: " << s.nonlinear_constraints << "\n"
      << "  linear constraints:     " << s.linear_constraints << "\n"
      << "  wires:                  " << s.wires << "\n"
      << "  public inputs:          " << s.public_inputs << "\n"
      << "  private inputs:         " << s.private_inputs << "\n"
      << "  outputs:                " << s.outputs << "\n";
}

struct GridSpec {
  std::vector<size_t> nseq, seq_len, aln_len;
};

// "nseq=2,4;seq_len=10;aln_len=10,100". An empty spec is an empty grid.
GridSpec ParseGrid(std::string_view spec) {
  GridSpec g;
  if (spec.find_first_not_of(" \t") == std::string_view::npos) return g;
  std::map<std::string, std::vector<size_t>*> slots{
      {"nseq", &g.nseq}, {"seq_len", &g.seq_len}, {"aln_len", &g.aln_len}};
  std::set<std::string> seen;
  std::stringstream clauses{std::string(spec)};
  std::string clause;
  while (std::getline(clauses, clause, ';')) {
    const size_t eq = clause.find('=');
    if (eq == std::string::npos) throw EncodingError("grid clause '" + clause + "' lacks '='");
    const std::string key = clause.substr(0, eq);
    auto it = slots.find(key);
    if (it == slots.end()) throw EncodingError("unknown grid key '" + key + "'");
    if (!seen.insert(key).second) throw EncodingError("grid key '" + key + "' repeated");
    std::stringstream values{clause.substr(eq + 1)};
    std::string v;
    while (std::getline(values, v, ',')) {
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 9) {
        throw EncodingError("grid value '" + v + "' for " + key + " is not a count");
      }
      it->second->push_back(std::stoul(v));
    }
  }
  if (seen.size() != slots.size()) {
    throw EncodingError("grid must give nseq, seq_len and aln_len");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Backends

std::unique_ptr<Backend> BackendForTag(const BackendTag& tag, const std::string& external_cmd) {
  if (tag == kDevBackendTag) return MakeBackend("dev");
  if (tag == kExternalBackendTag) {
    if (external_cmd.empty()) throw BackendError("key was made by the external backend; pass --external-cmd");
    return MakeBackend("external", external_cmd);
  }
  throw BackendError("unknown backend tag in key file");
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  // compile
  size_t nseq = 0, seq_len = 0, aln_len = 0;
  std::string alphabet = "dna";
  std::vector<size_t> private_seq;
  bool private_score = false;
  bool json = false;
  // sweep
  std::string grid;
  unsigned jobs = 1;
  // shared paths
  std::string out, circuit, instance, witness, pk, vk, proof, public_file;
  // setup / prove / verify
  std::string backend = "dev", external_cmd, entropy;
  // encode
  std::string fasta, fasta_aln;
  int64_t score = 0;
};

class Commands {
 public:
  Commands(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int Compile() {
    CircuitParams p = CircuitParams::Make(o_.nseq, o_.seq_len, o_.aln_len);
    p.alphabet = LoadAlphabet(o_.alphabet);
    for (size_t k : o_.private_seq) {
      if (k >= p.nseq) throw EncodingError("--private-seq " + std::to_string(k) + " out of range");
      p.visibility.seq_public[k] = false;
    }
    p.visibility.score_public = !o_.private_score;
    p.Validate();
    const ConstraintSystem cs = BuildMain(p);
    const CircuitStats s = Stats(cs);
    if (!o_.out.empty()) WriteFile(o_.out, [&](std::ostream& os) { WriteCircuitFile(os, p, cs); });
    if (o_.json) {
      ordered_json doc = StatsJson(p, s);
      doc["fingerprint"] = ToHex(CircuitFingerprint(cs));
      out_ << doc.dump() << "\n";
    } else {
      PrintStats(out_, p, s);
    }
    return kExitOk;
  }

  int Sweep() {
    const GridSpec g = ParseGrid(o_.grid);
    std::vector<CircuitParams> points;
    for (size_t n : g.nseq) {
      for (size_t s : g.seq_len) {
        for (size_t a : g.aln_len) {
          points.push_back(CircuitParams::Make(n, s, a));
          points.back().Validate();
        }
      }
    }
    std::vector<CircuitStats> stats(points.size());
    std::atomic<size_t> next{0};
    std::mutex mu;
    std::exception_ptr failure;
    const auto work = [&] {
      for (size_t i = next++; i < points.size(); i = next++) {
        try {
          stats[i] = Stats(BuildMain(points[i]));
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, o_.jobs); ++t) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::ostringstream csv;
    csv << "nseq,seq_len,aln_len,nonlinear,linear,wires\n";
    for (size_t i = 0; i < points.size(); ++i) {
      csv << points[i].nseq << ',' << points[i].seq_len << ',' << points[i].aln_len << ','
          << stats[i].nonlinear_constraints << ',' << stats[i].linear_constraints << ','
          << stats[i].wires << '\n';
    }
    if (o_.out.empty()) {
      out_ << csv.str();
    } else {
      WriteFile(o_.out, [&](std::ostream& os) { os << csv.str(); });
      out_ << "wrote " << points.size() << " rows to " << o_.out << "\n";
    }
    return kExitOk;
  }

  int Check() {
    const InstanceFile f = LoadInstance(o_.instance);
    const Alphabet alphabet = LoadAlphabet(o_.alphabet);
    RequireWellFormed(f.inst, alphabet);
    if (f.params || o_.seq_len || o_.aln_len) {
      CircuitParams p = f.params ? ParamsFromJson(*f.params)
                                 : CircuitParams::Make(f.inst.seqs.size(), o_.seq_len, o_.aln_len);
      if (!f.params) p.alphabet = alphabet;
      EncodeInstance(p, f.inst);
    }
    const oracle::Verdict v = oracle::Validate(f.inst);
    out_ << (v.valid ? "" : "invalid: ") << v.Reason(f.inst.score) << "\n";
    return v.valid ? kExitOk : kExitRejected;
  }

  int MakeWitness() {
    const CircuitFile c = LoadCircuit(o_.circuit);
    const InstanceFile f = LoadInstance(o_.instance);
    const Witness w = SynthesizeWitness(c.cs, EncodeInstance(c.params, f.inst));
    if (!CheckSatisfied(c.cs, w)) throw CircuitError("synthesized witness violates the circuit");
    WriteFile(o_.out, [&](std::ostream& os) { WriteWitnessJson(os, w); });
    out_ << "y = " << w[c.cs.outputs().front()].ToDecimal() << "\n";
    return kExitOk;
  }

  int Setup() {
    const CircuitFile c = LoadCircuit(o_.circuit);
    const auto backend = MakeBackend(o_.backend, o_.external_cmd);
    const KeyPair keys = backend->Setup(
        c.cs, std::span(reinterpret_cast<const uint8_t*>(o_.entropy.data()), o_.entropy.size()));
    WriteBinary(o_.pk, SerializeProvingKey(keys.pk));
    WriteBinary(o_.vk, SerializeVerifyingKey(keys.vk));
    out_ << backend->Describe() << "\n"
         << "fingerprint " << ToHex(keys.pk.fingerprint) << "\n";
    return kExitOk;
  }

  int Prove() {
    const CircuitFile c = LoadCircuit(o_.circuit);
    const ProvingKey pk = ParseProvingKey(ReadBinary(o_.pk));
    const Witness w = WitnessFromJson(ParseJson(ReadFile(o_.witness), "witness file " + o_.witness));
    const Proof proof = BackendForTag(pk.backend, o_.external_cmd)->Prove(pk, c.cs, w);
    WriteFile(o_.out, [&](std::ostream& os) { os << ProofToJson(proof) << "\n"; });
    out_ << "y = " << proof.public_values.back().ToDecimal() << "\n";
    return kExitOk;
  }

  int Verify() {
    const VerifyingKey vk = ParseVerifyingKey(ReadBinary(o_.vk));
    const Proof proof = ProofFromJson(ReadFile(o_.proof));
    if (proof.fingerprint != vk.fingerprint) {
      throw BackendError("proof and verifying key belong to different circuits");
    }
    std::vector<FieldElement> pub = proof.public_values;
    if (!o_.public_file.empty()) {
      pub.clear();
      const ordered_json doc = ParseJson(ReadFile(o_.public_file), "public values file");
      for (const auto& v : doc) pub.push_back(FieldElement::FromDecimal(v.get<std::string>()));
    }
    const bool ok = BackendForTag(vk.backend, o_.external_cmd)->Verify(vk, pub, proof);
    if (!ok) {
      out_ << "rejected\n";
      return kExitRejected;
    }
    out_ << "accepted: y = " << pub.back().ToDecimal() << "\n";
    return kExitOk;
  }

  int Encode() {
    const auto seqs = ParseFasta(ReadFile(o_.fasta));
    const auto rows = ParseFasta(ReadFile(o_.fasta_aln));
    if (seqs.size() != rows.size()) {
      throw EncodingError(std::to_string(seqs.size()) + " sequences but " +
                          std::to_string(rows.size()) + " alignment records");
    }
    MsaInstance inst;
    for (const FastaRecord& r : seqs) inst.seqs.push_back(r.letters);
    for (const FastaRecord& r : rows) inst.aln.push_back(r.letters);
    inst.score = o_.score;
    RequireWellFormed(inst, LoadAlphabet(o_.alphabet));
    const std::string text = InstanceToJson(inst);
    if (o_.out.empty()) {
      out_ << text;
    } else {
      WriteFile(o_.out, [&](std::ostream& os) { os << text; });
    }
    return kExitOk;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::function<int(Commands&)> action;

  CLI::App app{"Zero-knowledge validator circuits for multiple sequence alignments", "zkmsa"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "Build a validator circuit and report its size");
  compile->add_option("--nseq", o.nseq, "Number of sequences")->required();
  compile->add_option("--seq-len", o.seq_len, "Padded sequence length")->required();
  compile->add_option("--aln-len", o.aln_len, "Alignment length")->required();
  compile->add_option("--alphabet", o.alphabet, "dna, protein, or a JSON file {letter: code}");
  compile->add_option("--private-seq", o.private_seq, "Index of a sequence to keep private");
  compile->add_flag("--private-score", o.private_score, "Keep the score private");
  compile->add_option("--out", o.out, "Circuit file to write");
  compile->add_flag("--json", o.json, "Print statistics as JSON");
  compile->callback([&] { action = &Commands::Compile; });

  auto* sweep = app.add_subcommand("sweep", "Constraint counts over a parameter grid");
  sweep->add_option("--grid", o.grid, "e.g. \"nseq=10;seq_len=10;aln_len=10,100\"")->required();
  sweep->add_option("--out", o.out, "CSV file (stdout if omitted)");
  sweep->add_option("--jobs", o.jobs, "Parallel circuit builds")->check(CLI::Range(1u, 256u));
  sweep->callback([&] { action = &Commands::Sweep; });

  auto* check = app.add_subcommand("check", "Validate an instance with the plain reference checker");
  check->add_option("instance", o.instance, "Instance JSON file")->required();
  check->add_option("--seq-len", o.seq_len, "Also require the instance to fit this seq_len");
  check->add_option("--aln-len", o.aln_len, "Also require the instance to fit this aln_len");
  check->add_option("--alphabet", o.alphabet, "dna, protein, or a JSON file");
  check->callback([&] { action = &Commands::Check; });

  auto* witness = app.add_subcommand("witness", "Compute a witness for an instance");
  witness->add_option("--circuit", o.circuit)->required();
  witness->add_option("--instance", o.instance)->required();
  witness->add_option("--out", o.out)->required();
  witness->callback([&] { action = &Commands::MakeWitness; });

  auto* setup = app.add_subcommand("setup", "Generate proving and verifying keys");
  setup->add_option("--circuit", o.circuit)->required();
  setup->add_option("--backend", o.backend)->check(CLI::IsMember({"dev", "external"}));
  setup->add_option("--external-cmd", o.external_cmd, "Prover command for --backend external");
  setup->add_option("--entropy", o.entropy, "Setup randomness (bytes of this string)");
  setup->add_option("--pk", o.pk)->required();
  setup->add_option("--vk", o.vk)->required();
  setup->callback([&] { action = &Commands::Setup; });

  auto* prove = app.add_subcommand("prove", "Prove a witness");
  prove->add_option("--circuit", o.circuit)->required();
  prove->add_option("--pk", o.pk)->required();
  prove->add_option("--witness", o.witness)->required();
  prove->add_option("--out", o.out)->required();
  prove->add_option("--external-cmd", o.external_cmd);
  prove->callback([&] { action = &Commands::Prove; });

  auto* verify = app.add_subcommand("verify", "Verify a proof");
  verify->add_option("--vk", o.vk)->required();
  verify->add_option("--proof", o.proof)->required();
  verify->add_option("--public", o.public_file, "JSON array of public values to check instead");
  verify->add_option("--external-cmd", o.external_cmd);
  verify->callback([&] { action = &Commands::Verify; });

  auto* encode = app.add_subcommand("encode", "Build an instance file from FASTA");
  encode->add_option("--fasta", o.fasta, "Input sequences")->required();
  encode->add_option("--fasta-aln", o.fasta_aln, "Aligned sequences, same order")->required();
  encode->add_option("--score", o.score, "Claimed sum-of-pairs score")->required();
  encode->add_option("--alphabet", o.alphabet, "dna, protein, or a JSON file");
  encode->add_option("--out", o.out, "Instance file (stdout if omitted)");
  encode->callback([&] { action = &Commands::Encode; });

  std::vector<const char*> argv{"zkmsa"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    Commands commands(o, out);
    return action(commands);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace zkmsa::cli
