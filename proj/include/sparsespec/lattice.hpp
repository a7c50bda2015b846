#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsespec/rng.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Smallest prime strictly greater than n (5 -> 7).
std::uint64_t smallest_prime_above(std::uint64_t n);

// Rank-1 lattice {(j/M) z mod 1 : j = 0..M-1} with prime size M and
// generating vector z, z_i in {1, ..., M-1}.
struct Rank1Lattice {
  std::size_t dim = 0;
  std::uint64_t M = 0;
  std::vector<std::uint64_t> z;
};

// Random lattice that is reconstructing for any fixed frequency set of the
// given size with probability >= 1 - sigma: M is the smallest prime above
// max(K, set_size^2 / sigma), z_i i.i.d. uniform on {1, ..., M-1}.
Rank1Lattice generate_random_lattice(std::size_t dim, std::uint64_t K,
                                     std::size_t set_size, double sigma,
                                     Rng& rng);

PointSet lattice_nodes(const Rank1Lattice& lat);

// k.z mod M, mapped to {0, ..., M-1}.
std::uint64_t lattice_residue(const Rank1Lattice& lat, const Frequency& k);

// True iff k -> k.z mod M is injective on the given set.
bool is_reconstructing(const Rank1Lattice& lat,
                       std::span<const Frequency> freqs);

// Forward transform c_m = (1/M) sum_j samples_j e^{-2 pi i j m / M}. With
// this normalization a lattice-sampled g supported on a reconstructing set
// satisfies c_{k.z mod M} = g_hat_k exactly. Any length M is supported
// (FFTW handles prime sizes in O(M log M)).
std::vector<Complex> lattice_fft(std::span<const Complex> samples);

// Synthesis adjoint: samples_j = sum_m coeffs_m e^{+2 pi i j m / M}, so
// lattice_fft(lattice_ifft(c)) == c.
std::vector<Complex> lattice_ifft(std::span<const Complex> coeffs);

}  // namespace sparsespec
