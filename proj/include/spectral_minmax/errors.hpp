#pragma once

#include <stdexcept>
#include <string>

namespace spectral_minmax {

// Malformed input data: a measure whose mass is not 1, a matrix that is not
// Hermitian, a JSON document missing a field. The message names the defect.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain (s0 > s1, rank > dim, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative numerics that failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A projection ordering precondition (e <= r) does not hold.
class OrderingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A projection-family construction is infeasible, or its self-check failed.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trace that must be a multiple of 1/n is not.
class GranularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The spectrum has merged (repeated) eigenvalues and the caller did not ask
// for the distinct-eigenvalue perturbation.
class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectral_minmax
