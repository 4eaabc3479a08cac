// Copyright 2026 The opsq Authors.
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

#ifndef OPSQ_ERROR_HPP
#define OPSQ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opsq {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue (or scalar argument) fell outside a function's domain.
/// The offending values are kept so callers can report them.
class DomainViolation : public Error {
 public:
  DomainViolation(const std::string& what, std::vector<double> offending = {})
      : Error(what), offending_(std::move(offending)) {}

  const std::vector<double>& offending() const noexcept { return offending_; }

 private:
  std::vector<double> offending_;
};

class MissingDerivative : public Error {
 public:
  using Error::Error;
};

class NotUnital : public Error {
 public:
  using Error::Error;
};

class NotAResolution : public Error {
 public:
  using Error::Error;
};

class NotIsometry : public Error {
 public:
  using Error::Error;
};

class NotUnitVector : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

class RegressionFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input document or identifier.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace opsq

#endif  // OPSQ_ERROR_HPP
