// Copyright 2026 The rotcd Authors
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

namespace rotcd {

// Operand shapes disagree (qubit counts, matrix sizes, field arity).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds a configured dense-representation cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input lies outside the mathematical domain of an operation
// (non-Hermitian, non-diagonal, undefined angle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Scalar argument outside its admissible interval.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Numerical procedure failed (non-finite objective, norm drift, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rotcd
