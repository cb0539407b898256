#pragma once

#include <stdexcept>
#include <string>

namespace lfk {

// Exception taxonomy. The CLI maps each family onto a distinct exit code.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs with mismatched shapes, moduli or unparsable text.
struct MalformedInput : Error {
  using Error::Error;
};

// Mathematically invalid requests (trivial line, zero inverse, ...).
struct DomainError : Error {
  using Error::Error;
};

// Cases the library deliberately does not cover.
struct UnsupportedCase : DomainError {
  using DomainError::DomainError;
};

// A class lies outside the finite window an adapted basis covers.
struct OutOfWindow : DomainError {
  using DomainError::DomainError;
};

// A digit that the computation needs is not known at the working precision.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// Broken internal invariant; always a bug or an unsound input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace lfk
