/*
 Copyright 2026 The lpvred Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace lpvred {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes are inconsistent.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter value lies outside the model's parameter box.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An input failed a structural validation check (orthonormality,
/// symmetry, positivity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A required stability property does not hold.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// An enumeration request would produce too many elements.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or unsupported configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to produce a usable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An LMI system admits no solution at the requested margins.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Transfer-function evaluation hit the numerical neighborhood of a pole.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A file could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpvred
