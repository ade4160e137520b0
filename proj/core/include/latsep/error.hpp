#pragma once

#include <stdexcept>
#include <string>

namespace latsep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation that is only implemented for small ambient dimension.
class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Integer coordinates left the 64-bit range.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A separating flag whose functionals do not cut the dimension by one per level.
class InvalidFlag : public Error {
 public:
  using Error::Error;
};

class NoInteriorPoints : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class UnknownEntry : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace latsep
