#pragma once

#include <stdexcept>
#include <string>

namespace sfmio {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input bytes do not match the expected grammar, or the stream is truncated.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file or directory could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// No known reconstruction format matches the given path.
class UnknownFormatError : public Error {
 public:
  using Error::Error;
};

/// The scene cannot be expressed in the requested output format
/// (e.g. anisotropic focal lengths in a single-focal format).
class RepresentabilityError : public Error {
 public:
  using Error::Error;
};

/// Invalid geometric input: degenerate quaternion, non-rigid rotation,
/// non-positive depth and the like.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfmio
