#pragma once

#include <stdexcept>
#include <string>

namespace siggeo {

// Base class for all library errors. Subclasses map one-to-one onto the
// failure categories surfaced at the CLI: I/O problems exit with 1, every
// other Error exits with 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Signal violating its basic invariants (length < 2, non-finite values,
// nonpositive dt).
class MalformedSignalError : public Error {
 public:
  using Error::Error;
};

// An operation that needs a nonzero signal received an all-zero one
// (amplitude normalization, L2 normalization, cosine distance).
class DegenerateSignalError : public Error {
 public:
  using Error::Error;
};

// Operand lengths do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidWindowError : public Error {
 public:
  using Error::Error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A requested subset size exceeds the available population.
class SamplingError : public Error {
 public:
  using Error::Error;
};

// Generator parameters outside their admissible region (knot-ordering
// violations, V0 <= Vmin, nonpositive widths).
class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

// A parameter box from which no admissible parameter vector can be drawn.
class InfeasibleSpecError : public Error {
 public:
  using Error::Error;
};

// Malformed config, manifest, or matrix content.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure (missing file, unreadable stream).
class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace siggeo
