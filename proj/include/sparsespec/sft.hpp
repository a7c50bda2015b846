#pragma once

#include <cstdint>
#include <span>

#include "sparsespec/lattice.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

struct SftConfig {
  std::size_t dim = 1;
  std::uint64_t K = 2;    // even bandwidth >= 2; cube is {-K/2+1,...,K/2}^d
  std::size_t s = 1;      // target sparsity; at most 2s modes are returned
  double sigma = 0.05;    // lattice failure probability budget, in (0,1]
  std::uint64_t seed = 0;
};

struct SftDiagnostics {
  Rank1Lattice lattice;
  std::size_t significant_bins = 0;   // bins above the magnitude threshold
  std::size_t out_of_cube_bins = 0;   // decoded outside the cube, skipped
  std::size_t collision_bins = 0;     // decoded onto an already-taken k
  std::size_t samples_taken = 0;      // (dim + 1) * M
};

// Sparse Fourier transform on a fresh random rank-1 lattice sized for 2s
// modes. Pipeline: sample g on the lattice and on d copies shifted by
// delta = 1/(2K) along each coordinate, run length-M FFTs, pick bins of the
// unshifted transform in decreasing magnitude (ties by bin index), decode
// each frequency component from the shifted/unshifted phase ratio, and keep
// the first 2s bins that decode inside the cube. Bins below 1e-10 times the
// largest magnitude are noise and never decoded. Two bins decoding to the
// same frequency keep the larger magnitude. Bins that decode outside the
// cube are skipped (the transform reports the cube-restricted spectrum);
// DecodingFailure is thrown only if every significant bin lands outside the
// cube, since no retry can recover an in-cube mode in that case.
//
// Cost: (d+1) * M samples of g, M = smallest prime above max(K, 4 s^2 / sigma).
SparseSpectrum sft(const SampledFunction& g, const SftConfig& cfg,
                   SftDiagnostics* diag = nullptr);

// Decodes one frequency from the phase ratios shifted_i / base:
// k_i = round(arg(shifted_i / base) / (2 pi delta)), checked against the cube
// {-K/2+1, ..., K/2} (boundary K/2 accepted). Throws DecodingFailure on an
// out-of-cube component, DimensionMismatch on |base| == 0.
Frequency decode_frequency(Complex base, std::span<const Complex> shifted,
                           double delta, std::uint64_t K);

struct SftErrorBounds {
  double l2;    // bound on ||g_hat|_K - output||_2
  double linf;  // bound on the same difference in l_inf
};

// A-priori recovery bounds in terms of the best s-term tail. opt_tail_l1 is
// the l1 norm of g_hat minus its best in-cube s-term approximation. With
// tail_l1 == 0: l2 = (25+3K) sqrt(s) opt, linf = (33+4K) opt. A positive
// tail_l1 (mass outside the cube, tracked separately) switches l2 to the
// two-term form (25+3K)(opt/sqrt(s) + sqrt(s) tail) and adds tail to linf.
SftErrorBounds sft_error_bounds(const SftConfig& cfg, double tail_l1,
                                double opt_tail_l1);

}  // namespace sparsespec
