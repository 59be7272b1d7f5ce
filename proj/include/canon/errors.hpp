#pragma once

#include <stdexcept>
#include <string>

namespace canon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vertex mapping that is not a bijection onto {0..n-1}.
class InvalidLabeling : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked to run above its configured size cap.
class OracleCapacityError : public Error {
 public:
  using Error::Error;
};

/// An invariant backend would exceed its memory cap.
class BackendCapacityError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (cg, rs, graph6, backend selector, manifest).
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

class NoPolyhedralEmbedding : public Error {
 public:
  using Error::Error;
};

}  // namespace canon
