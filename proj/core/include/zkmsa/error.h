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

#ifndef ZKMSA_ERROR_H_
#define ZKMSA_ERROR_H_

#include <stdexcept>
#include <string>

namespace zkmsa {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic misuse: inverting zero, decoding outside a window, bad decimal.
class FieldError : public Error {
 public:
  using Error::Error;
};

// Misuse of the constraint-system builder or a malformed system/witness.
class CircuitError : public Error {
 public:
  using Error::Error;
};

// Instance data that cannot be mapped onto a circuit or checked at all
// (ragged rows, letters outside the alphabet, oversize sequences).
class EncodingError : public Error {
 public:
  using Error::Error;
};

// Key/proof mismatch or undecodable backend artifacts.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace zkmsa

#endif  // ZKMSA_ERROR_H_
