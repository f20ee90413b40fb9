// Copyright 2026 The SLU Engine Authors.
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

#ifndef SLU_BASE_ERRORS_H_
#define SLU_BASE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slu {

// Root of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input and output alphabets of two machines do not agree.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

// Subset construction exceeded its state budget.
class DeterminizeBudgetError : public Error {
 public:
  using Error::Error;
};

// An algorithm was called on an input violating its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Replace found a class label with no substitution machine.
class MissingClassError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Text format errors carrying the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Malformed "(value)[slot]" markup; offset is a byte offset into the input.
class AnnotationError : public Error {
 public:
  AnnotationError(const std::string &what, std::size_t offset)
      : Error("offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Invalid slot or dataset definition.
class DefinitionError : public Error {
 public:
  using Error::Error;
};

class G2pError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// BIO label sequence that cannot come from a well-formed annotation.
class ConversionError : public Error {
 public:
  using Error::Error;
};

// Dataset, test set or bundle that does not match its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInjectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace slu

#endif  // SLU_BASE_ERRORS_H_
