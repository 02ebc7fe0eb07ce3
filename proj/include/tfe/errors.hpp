// Copyright 2026 The tfe Authors
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

namespace tfe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid too small to carry fourth derivatives.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different grids or have mismatched lengths.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point or parameter outside its admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// 1 + g lost positivity: the Lagrangian map is no longer invertible.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared in a field.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Eulerian data whose contact slopes are outside the unit-angle class.
class ContactAngleError : public Error {
 public:
  using Error::Error;
};

class InvalidProfileError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Exponent combination for which an interpolation inequality is not defined.
class ExponentError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input violates the precondition of a check (e.g. no zero for Poincare).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Internal contradiction between quantities that cannot disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Singular collocation system.
class DiscretizationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfe
