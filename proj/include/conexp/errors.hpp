#pragma once

#include <stdexcept>
#include <string>

namespace conexp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A level or other scalar parameter is outside its admissible domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed data: empty samples, bad weights, dimension mismatches, singular maps.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The cone cannot be handled (e.g. its dual is trivial in the plane).
class UnsupportedConeError : public Error {
 public:
  using Error::Error;
};

/// A modelling hypothesis is violated (e.g. the cone does not contain the orthant).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the desk-scale limits.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// The operation is not offered in this dimension.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace conexp
