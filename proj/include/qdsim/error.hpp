// Copyright 2026 The qdsim Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdsim {

/// Machine-readable error categories. Every exception thrown by the library
/// derives from qdsim::Error and carries one of these codes.
enum class ErrorCode {
  Dimension,
  Validity,
  Domain,
  SingularNormalization,
  IntegrationDiverged,
  Precondition,
  UnsupportedMode,
  NotFound,
  Syntax,
  UnknownKey,
  MissingKey,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Shape mismatch or non-square operand.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCode::Dimension, what) {}
};

/// Value violates a type invariant (non-finite, non-Hermitian, negative...).
class ValidityError : public Error {
 public:
  explicit ValidityError(const std::string& what)
      : Error(ErrorCode::Validity, what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::Domain, what) {}
};

/// tr(F rho) fell below the singular-normalization cutoff.
class SingularNormalizationError : public Error {
 public:
  explicit SingularNormalizationError(const std::string& what)
      : Error(ErrorCode::SingularNormalization, what) {}
};

/// The integrator left the admissible state set; reports where.
class IntegrationDivergedError : public Error {
 public:
  IntegrationDivergedError(double time, const std::string& what)
      : Error(ErrorCode::IntegrationDiverged,
              what + " at t=" + std::to_string(time)),
        time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::Precondition, what) {}
};

class UnsupportedModeError : public Error {
 public:
  explicit UnsupportedModeError(const std::string& what)
      : Error(ErrorCode::UnsupportedMode, what) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& what)
      : Error(ErrorCode::NotFound, what) {}
};

/// Scenario text could not be tokenized; line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::Syntax, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownKeyError : public Error {
 public:
  UnknownKeyError(std::size_t line, const std::string& key)
      : Error(ErrorCode::UnknownKey,
              "line " + std::to_string(line) + ": unknown key '" + key + "'"),
        line_(line),
        key_(key) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

class MissingKeyError : public Error {
 public:
  explicit MissingKeyError(const std::string& key)
      : Error(ErrorCode::MissingKey, "missing required key '" + key + "'"),
        key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace qdsim
