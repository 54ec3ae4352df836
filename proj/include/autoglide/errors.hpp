// Exception types shared across the stack.
#pragma once

#include <stdexcept>
#include <string>

namespace autoglide {

/// A non-finite value reached a numeric interface.
class NonFiniteError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Configuration or scenario content is invalid. The message carries the
/// dotted field path of the offending entry.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Degenerate geometry handed to a guidance law (zero-length segment,
/// aircraft exactly on a loiter center, carrot coincident with the aircraft).
class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Transport-level failure (socket setup, peer unreachable).
class TransportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace autoglide
