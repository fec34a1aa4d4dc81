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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "zkmsa/backend.h"
#include "zkmsa/error.h"

namespace zkmsa {
namespace {

namespace fs = std::filesystem;

// Scratch directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    std::string pattern = (fs::temp_directory_path() / "zkmsa-ext-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) throw BackendError("cannot create scratch directory");
    path_ = pattern;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::string File(std::string_view name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

void WriteBytes(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw BackendError("cannot write " + path);
}

std::vector<uint8_t> ReadBytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw BackendError("external prover did not produce " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

}  // namespace

ExternalBackend::ExternalBackend(std::string command) : command_(std::move(command)) {}

std::string ExternalBackend::Describe() const {
  return "external: delegates setup/prove/verify to '" + command_ +
         "' over the r1cs JSON exports; zero-knowledge iff that prover is";
}

int ExternalBackend::Run(const std::vector<std::string>& args) const {
  std::string cmd = command_;
  for (const std::string& a : args) cmd += " " + ShellQuote(a);
  cmd += " >/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) throw BackendError("failed to run external prover");
  return WEXITSTATUS(status);
}

KeyPair ExternalBackend::Setup(const ConstraintSystem& cs, std::span<const uint8_t> entropy) const {
  ScratchDir dir;
  {
    std::ofstream f(dir.File("circuit.json"));
    cs.WriteJson(f);
  }
  WriteBytes(dir.File("entropy.bin"), entropy);
  if (Run({"setup", dir.File("circuit.json"), dir.File("entropy.bin"), dir.File("pk.bin"),
           dir.File("vk.bin")}) != 0) {
    throw BackendError("external setup failed");
  }
  const Fingerprint fp = CircuitFingerprint(cs);
  KeyPair keys;
  keys.pk = ProvingKey{kExternalBackendTag, fp, ReadBytes(dir.File("pk.bin"))};
  keys.vk = VerifyingKey{kExternalBackendTag, fp,
                         static_cast<uint32_t>(cs.public_inputs().size() + cs.outputs().size()),
                         ReadBytes(dir.File("vk.bin"))};
  return keys;
}

Proof ExternalBackend::Prove(const ProvingKey& pk, const ConstraintSystem& cs,
                             const Witness& w) const {
  if (pk.backend != kExternalBackendTag) throw BackendError("proving key is not an external key");
  const Fingerprint fp = CircuitFingerprint(cs);
  if (pk.fingerprint != fp) throw BackendError("proving key was set up for a different circuit");
  if (w.values.size() != cs.num_signals() || !CheckSatisfied(cs, w)) {
    throw BackendError("witness does not satisfy the constraint system");
  }
  ScratchDir dir;
  {
    std::ofstream f(dir.File("circuit.json"));
    cs.WriteJson(f);
    std::ofstream g(dir.File("witness.json"));
    WriteWitnessJson(g, w);
  }
  WriteBytes(dir.File("pk.bin"), pk.payload);
  if (Run({"prove", dir.File("circuit.json"), dir.File("pk.bin"), dir.File("witness.json"),
           dir.File("proof.bin")}) != 0) {
    throw BackendError("external prove failed");
  }
  return Proof{kExternalBackendTag, fp, PublicValues(cs, w), ReadBytes(dir.File("proof.bin"))};
}

bool ExternalBackend::Verify(const VerifyingKey& vk, std::span<const FieldElement> public_values,
                             const Proof& proof) const {
  if (public_values.size() != vk.public_count) {
    throw BackendError("expected " + std::to_string(vk.public_count) + " public values, got " +
                       std::to_string(public_values.size()));
  }
  if (vk.backend != kExternalBackendTag) throw BackendError("verifying key is not an external key");
  if (proof.backend != kExternalBackendTag || proof.fingerprint != vk.fingerprint) return false;

  ScratchDir dir;
  WriteBytes(dir.File("vk.bin"), vk.payload);
  WriteBytes(dir.File("proof.bin"), proof.payload);
  {
    std::ofstream f(dir.File("public.json"));
    f << '[';
    for (size_t i = 0; i < public_values.size(); ++i) {
      f << (i ? "," : "") << '"' << public_values[i].ToDecimal() << '"';
    }
    f << ']';
  }
  const int rc = Run({"verify", dir.File("vk.bin"), dir.File("public.json"), dir.File("proof.bin")});
  if (rc == 0) return true;
  if (rc == 1) return false;
  throw BackendError("external verify exited with status " + std::to_string(rc));
}

}  // namespace zkmsa
