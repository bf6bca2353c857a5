#pragma once

#include <stdexcept>
#include <string>

namespace mcmlab {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax, unknown names, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (dimension cap, window cap) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Kernel generators reached the top of the computed degree range.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

/// Finite differences never stabilized inside the allowed window.
class WindowTooShort : public Error {
 public:
  using Error::Error;
};

/// An operation needing a grading met a non-homogeneous ring, module or map.
class NotGraded : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant failed at runtime, e.g. a negative e^T of a
/// sequence or disagreement between two routes to the same number.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mcmlab
