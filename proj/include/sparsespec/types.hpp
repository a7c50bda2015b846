#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sparsespec {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Execution policy for the data-parallel kernels. `parallel` uses OpenMP when
// compiled in; `serial` is the reference path kept for testing and benchmarks.
// Both paths produce bit-identical results (each output slot is written by
// exactly one iteration; reductions run in fixed order).
enum class Exec { parallel, serial };

// Shared error taxonomy. Every module throws subclasses of Error so callers
// can distinguish contract violations from environmental failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands with different dimensions, or points outside the declared domain.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Integer overflow in frequency arithmetic.
struct OverflowError : Error {
  using Error::Error;
};

// Phase decoding produced a frequency outside the requested cube.
struct DecodingFailure : Error {
  using Error::Error;
};

// Stamp set missing the zero frequency or not symmetric.
struct InvalidStamp : Error {
  using Error::Error;
};

// Stamping enumeration exceeded the configured cap.
struct StampOverflow : Error {
  using Error::Error;
};

// Recovered coefficient spectrum is not verifiably elliptic.
struct EllipticityFailure : Error {
  using Error::Error;
};

// Linear solve failed (singular factor, condition estimate above 1e14, or
// residual check failed).
struct SolverFailure : Error {
  using Error::Error;
};

// Operation invoked without the data it needs (e.g. Monte Carlo proxy error
// without a coefficient spectrum or gradient).
struct UnsupportedConfiguration : Error {
  using Error::Error;
};

}  // namespace sparsespec
