// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace trace_repair {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid tower parameters (non-prime characteristic, size cap, bad degrees).
class TowerError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in field") {}
};

/// A basis or generator set does not have the rank an operation needs.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Inputs that coincide where they must be distinct, or a zero multiplier.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Message polynomial has too many coefficients for the code dimension.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Vectors of mismatched length.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Erasure pattern does not fit the requested scheme.
class PatternError : public Error {
 public:
  using Error::Error;
};

/// The scheme needs the extension degree t to be a multiple of the characteristic.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// Three-erasure pattern for which no pairwise-difference ratio has zero trace.
class NotCorrectable : public Error {
 public:
  using Error::Error;
};

/// Malformed element notation or config text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace trace_repair
