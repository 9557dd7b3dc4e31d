// Copyright 2026 The QCT Authors
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

namespace qct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or tensor-factor layouts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An object violates one of its own invariants (Hermiticity, trace,
/// Kraus completeness, POVM normalization, ...). The message names it.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Strategies that cannot be assembled into a protocol run.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A document is not well-formed JSON or does not follow the schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qct
