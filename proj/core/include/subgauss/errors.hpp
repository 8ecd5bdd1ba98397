// Copyright 2026 The subgauss Authors
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

#include <stdexcept>
#include <string>

namespace subgauss {

/// Base class for all library errors; the CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The discard budget (1/3)log(1/delta) meets or exceeds the number of
/// samples with nonzero spread, so no finite trimming level exists.
class InfeasibleBudget : public Error {
 public:
  using Error::Error;
};

/// Every sample coincides with the pilot; the trimming equation is
/// identically zero.
class DegenerateSamples : public Error {
 public:
  using Error::Error;
};

class EmptyAfterTrim : public Error {
 public:
  using Error::Error;
};

/// Catoni's estimator requires n > 2 log(1/delta).
class InfeasibleRegime : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// The argument of the log on the inequality's right-hand side is not
/// positive at some y; a certificate failure rather than a usage error.
class NonpositiveLogArgument : public Error {
 public:
  NonpositiveLogArgument(const std::string& what, double y)
      : Error(what), offending_y(y) {}
  double offending_y;
};

class UnsupportedDistribution : public Error {
 public:
  using Error::Error;
};

class InvalidLambda : public Error {
 public:
  using Error::Error;
};

class EmptyGroup : public Error {
 public:
  using Error::Error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

/// Malformed input file, config file, or flag value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace subgauss
