/*
 Copyright 2026 The hpmocp Authors

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

namespace hpmocp {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Raised when a problem or config fails validation; what() lists every issue.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Phi_12 of a linear TPBVP is singular on the requested horizon.
class BoundarySystemSingularError : public Error {
 public:
  using Error::Error;
};

// Terminal boundary residual of a linear TPBVP solve exceeds tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Forward simulation left the finite range (state norm above 1e12).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Series terms were supplied out of order or with gaps.
class SequencingError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpmocp
