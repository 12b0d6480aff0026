#pragma once

#include <stdexcept>
#include <string>

namespace nqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor shapes or map dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different coefficient rings (plain vs. epsilon-polynomial).
class RingError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON tensors, certificates, graphs, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap or search budget was exceeded.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace nqc
