// Copyright 2026 The QMCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qmci {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register too large for the desk-scale simulator, or QPE register overflow.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Qubit index out of range, index collision, or mismatched lengths.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric input: bad distribution parameters, NaN values, degenerate fits.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Budget plans that are infeasible or do not cover the requested harmonics.
class PlanError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmci
