// Copyright 2026 the lssclt authors
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

#ifndef LSSCLT_ERRORS_HPP_
#define LSSCLT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lssclt {

// Base class for every error the library raises on purpose.  The CLI maps
// subtrees of this hierarchy onto its exit codes: configuration errors -> 2,
// numeric failures -> 3, I/O failures -> 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- configuration / argument errors -----------------------------------------

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Config file could not be parsed.  Carries 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Config parsed but violates a model invariant; message names the invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// --- numeric errors -----------------------------------------------------------

class NumericError : public Error {
 public:
  using Error::Error;
};

// Fixed-point solver ran out of iterations; residual and count are reported.
class NonConvergenceError : public NumericError {
 public:
  NonConvergenceError(const std::string& what, double residual, int iterations)
      : NumericError(what + " (residual " + std::to_string(residual) + " after " +
                     std::to_string(iterations) + " iterations)"),
        residual(residual),
        iterations(iterations) {}
  double residual;
  int iterations;
};

// Node doubling failed to stabilize a contour integral.
class QuadratureNotConvergedError : public NumericError {
 public:
  using NumericError::NumericError;
};

// |1 + t*s| underflowed in a spectral sum: the contour touches the spectrum.
class SingularFactorError : public NumericError {
 public:
  using NumericError::NumericError;
};

// |a_n(z1,z2)| >= 1 at a node pair: contours too close to the support for the
// principal-branch closed form of the inner t-integral.
class BranchViolationError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Truncated-law variance collapsed (threshold too aggressive).
class DegenerateTruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Test function is (numerically) constant: variance has no positive value.
class DegenerateFunctionError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A required derivative callback is missing on a TestFunction.
class MissingDerivativeError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Test function evaluated to a non-finite value at a fit node.
class EvalFailureError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Bernstein degree beyond the supported range.
class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Linear-algebra backend failure (SVD did not converge, etc.).
class LinAlgError : public NumericError {
 public:
  using NumericError::NumericError;
};

// --- I/O errors ---------------------------------------------------------------

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lssclt

#endif  // LSSCLT_ERRORS_HPP_
