#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A Fock index or pair label falls outside the admissible range for the cutoff.
class CutoffError : public Error {
public:
  using Error::Error;
};

/// Coherent-state tail beyond n_max is too heavy; carries the smallest cutoff that works.
class InsufficientCutoffError : public Error {
public:
  InsufficientCutoffError(const std::string& what, int min_n_max)
      : Error(what), min_n_max_(min_n_max) {}
  int min_n_max() const noexcept { return min_n_max_; }

private:
  int min_n_max_;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Closed forms only exist on resonance (nu == omega).
class UnsupportedConfiguration : public Error {
public:
  using Error::Error;
};

/// mu_n == 0 and eta_n <= 0: the 2x2 rotation angle is undefined.
class DegenerateBranchError : public Error {
public:
  using Error::Error;
};

/// Initial field state has weight outside the guard-banded interior.
class UnsupportedFieldTail : public Error {
public:
  using Error::Error;
};

class NonHermitianError : public Error {
public:
  using Error::Error;
};

class EigensolverError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

}  // namespace rabi
