// include/rslu/common/errors.h
//
// Copyright 2026  The rslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RSLU_COMMON_ERRORS_H_
#define RSLU_COMMON_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rslu {

// Base of every error the library throws. The CLI maps subclasses to exit
// codes: usage/config problems exit with 2, everything else with 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or axis problems in tensor operations.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value outside an operation's mathematical domain (e.g. log of x <= 0).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::size_t index)
      : Error(what + " (at flat index " + std::to_string(index) + ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Caller violated a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Operation is invalid in the object's current state.
class StateError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, double best_wer)
      : Error(what + " (best achieved WER " + std::to_string(best_wer) + ")"),
        best_wer_(best_wer) {}
  double best_wer() const { return best_wer_; }

 private:
  double best_wer_;
};

// Malformed, truncated or incompatible checkpoint files.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Training diverged (non-finite loss). The message carries the batch dump.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Emits a warning line on stderr, prefixed like the rest of the tool output.
void Warn(const std::string& message);

}  // namespace rslu

#endif  // RSLU_COMMON_ERRORS_H_
