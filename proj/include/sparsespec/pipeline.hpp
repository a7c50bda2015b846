#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsespec/galerkin.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/stamping.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

struct SolverConfig {
  std::uint64_t K = 2;      // SFT bandwidth (even)
  std::size_t s = 1;        // SFT target sparsity
  int N = 1;                // stamping level
  double sigma = 0.05;      // lattice failure budget per SFT
  std::size_t mc_samples = 1000;  // 0 disables the MC proxy estimate
  std::uint64_t seed = 0;         // master seed; stages derive their own
  std::size_t stamp_cap = kDefaultStampCap;
};

// Diagonal-dominance profile of a recovered diffusion spectrum.
struct EllipticityProfile {
  double a0 = 0;            // zero-frequency coefficient (real part)
  double deviation_l1 = 0;  // sum_{k != 0} |a_hat_k|
  double a_min_lb = 0;      // a0 - deviation_l1
  double A = 0;             // deviation_l1 / a_min_lb (l1 surrogate)
  bool decay_hypothesis = false;  // 3 deviation_l1 < a_min_lb
  double decay_base = 0;          // A / (1 - 2A), defined under the hypothesis
};

EllipticityProfile make_ellipticity_profile(const SparseSpectrum& a_hat);

// Tail bound (decay_base)^{N+1} ||f||_2 / a_min_lb for the error of
// truncating the solution to S^N. Requires the decay hypothesis.
double truncation_decay_bound(const EllipticityProfile& p, int N, double f_l2);

// Full a-priori convergence bound combining SFT errors and stamping decay:
//   (1 + a_l1 / m) (f_l2 / m) [ sft_f_err_l2/f_l2 + sft_a_err_l1 + base^{N+1} ]
// with m = a_min_lb - sft_a_err_l1 and base = deviation/(m - 2 deviation),
// all l1 surrogates. Requires 3 deviation_l1 + sft_a_err_l1 < a_min sense
// hypothesis; throws UnsupportedConfiguration otherwise.
double convergence_bound(const EllipticityProfile& p, int N,
                         double sft_f_err_l2, double sft_a_err_l1, double f_l2,
                         double a_l1);

// Problem data handed to the pipeline. Point access drives the SFT stage;
// the optional exact spectra and gradient only feed the proxy-error
// estimators (exact route / gradient route), never the solve itself.
struct DiffusionProblem {
  SampledFunction a;
  SampledFunction f;
  std::optional<SparseSpectrum> a_hat;  // exact, when known
  std::optional<SparseSpectrum> f_hat;
  std::optional<GradientFn> a_grad;
};

struct AdrProblem {
  SampledFunction a;
  std::vector<SampledFunction> b;  // one per dimension
  SampledFunction c;
  SampledFunction f;
  std::optional<AdrSpectra> spectra;    // exact operator data, when known
  std::optional<SparseSpectrum> f_hat;  // exact rhs, when known
};

struct SolveReport {
  SparseSpectrum u_hat;
  SparseSpectrum a_hat_s;  // recovered (symmetrized) coefficient spectrum
  SparseSpectrum f_hat_s;  // recovered rhs spectrum
  std::size_t stamp_size = 0;
  EllipticityProfile profile;
  std::optional<double> truncation_bound;     // needs the decay hypothesis
  std::optional<double> proxy_error_exact;    // needs exact data
  std::optional<double> proxy_error_mc;       // absent when mc_samples == 0
  double t_sft = 0, t_stamp = 0, t_assemble = 0, t_solve = 0;  // seconds
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  SolveReport() : u_hat(0), a_hat_s(0), f_hat_s(0) {}
};

// Adaptive sparse spectral solve of -div(a grad u) = f:
// SFT both fields (seeds derived from cfg.seed as "sft:a" / "sft:f"),
// symmetrize a_hat, check ellipticity, stamp to level N, assemble, solve,
// then attach error estimates. A recovered spectrum that fails the l1
// dominance test (sufficient, not necessary, for coercivity) produces a
// warning and loses the decay-based bounds but still solves; a non-positive
// recovered mean throws EllipticityFailure. An f recovered with only
// zero-frequency content yields an empty solution plus a warning.
SolveReport sparse_spectral_solve(const DiffusionProblem& p,
                                  const SolverConfig& cfg);
SolveReport sparse_spectral_solve(const SampledFunction& a,
                                  const SampledFunction& f,
                                  const SolverConfig& cfg);

// ADR variant: SFTs a, f, every b_j and c (seeds "sft:b1", ..., "sft:c"),
// symmetrizes all coefficient spectra, uses the combined union stamp and the
// ADR assembly. With b = c = 0 the output matches sparse_spectral_solve
// bit for bit at equal seeds.
SolveReport sparse_spectral_solve_adr(const AdrProblem& p,
                                      const SolverConfig& cfg);

}  // namespace sparsespec
