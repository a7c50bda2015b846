#pragma once

#include <cstdint>
#include <optional>

#include "sparsespec/galerkin.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

// A-posteriori proxy error: push the approximate solution through the exact
// operator and compare against f in L2. For exactly sparse data this is
// computable in closed form; otherwise it is Monte Carlo sampled.

// ||f_hat - L[a_hat] u_approx||_2 / ||f_hat||_2 with exact spectra.
double proxy_error_exact(const SparseSpectrum& a_hat,
                         const SparseSpectrum& u_approx,
                         const SparseSpectrum& f_hat);
double proxy_error_exact_adr(const AdrSpectra& op,
                             const SparseSpectrum& u_approx,
                             const SparseSpectrum& f_hat);

// How the Monte Carlo estimator gets at the coefficient a. Routes, in
// priority order:
//   1. exact_spectrum: evaluate (L u)(x) through apply_operator.
//   2. values + gradient: pointwise -a(x) (Lap u)(x) - grad a(x) . grad u(x)
//      (derivatives of the trig polynomial u are exact).
//   3. recovered_spectrum: same as 1 with the SFT output substituted for the
//      unknown a_hat (documented fallback; measures the residual against the
//      recovered operator instead of the true one).
// With none of the three, the estimator throws UnsupportedConfiguration.
struct DiffusionAccess {
  std::optional<SparseSpectrum> exact_spectrum;
  std::optional<SampledFunction> values;
  std::optional<GradientFn> gradient;
  std::optional<SparseSpectrum> recovered_spectrum;
};

// sqrt(mean |f(x_i) - (L u)(x_i)|^2) / sqrt(mean |f(x_i)|^2) over n_samples
// uniform points. Deterministic in (seed, n_samples) and thread count.
double proxy_error_mc(const DiffusionAccess& a, const SampledFunction& f,
                      const SparseSpectrum& u_approx, std::size_t n_samples,
                      std::uint64_t seed, Exec exec = Exec::parallel);

// ADR variant; requires exact operator spectra.
double proxy_error_mc_adr(const AdrSpectra& op, const SampledFunction& f,
                          const SparseSpectrum& u_approx,
                          std::size_t n_samples, std::uint64_t seed,
                          Exec exec = Exec::parallel);

struct ReferenceErrors {
  double rel_l2;  // ||u - u_ref||_2 / ||u_ref||_2 in coefficient space
  double rel_h1;  // same with weight sqrt(1 + (2 pi)^2 ||k||^2)
};

ReferenceErrors reference_errors(const SparseSpectrum& u,
                                 const SparseSpectrum& u_ref);

}  // namespace sparsespec
