// Copyright 2026 The cavmux Authors
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

namespace cavmux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: out-of-range physical parameters or a malformed run config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach its accuracy target.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature stopped above its tolerance. Carries the estimate it
/// did achieve so callers can report it.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double achieved_relative_error)
      : NumericError(what), achieved_(achieved_relative_error) {}

  double achieved_relative_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Structured, non-fatal diagnostic. Surfaced by the CLI on stderr and
/// embedded in verification reports.
struct Warning {
  std::string code;
  std::string message;
};

}  // namespace cavmux
