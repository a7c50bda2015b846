#include "sparsespec/lattice.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_set>

#include <fmt/core.h>

#include "fftw_lock.hpp"

namespace sparsespec {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This base set is a proven deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t smallest_prime_above(std::uint64_t n) {
  if (n >= 18446744073709551557ULL)  // largest 64-bit prime is 2^64 - 59
    throw OverflowError("smallest_prime_above: no 64-bit prime above n");
  std::uint64_t c = n + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

Rank1Lattice generate_random_lattice(std::size_t dim, std::uint64_t K,
                                     std::size_t set_size, double sigma,
                                     Rng& rng) {
  if (dim == 0) throw DimensionMismatch("lattice: dim must be positive");
  if (K < 2) throw Error("lattice: bandwidth K must be >= 2");
  if (set_size == 0) throw Error("lattice: set_size must be positive");
  if (!(sigma > 0.0) || sigma > 1.0)
    throw Error("lattice: sigma must lie in (0, 1]");
  const double target = std::max<double>(
      static_cast<double>(K),
      static_cast<double>(set_size) * static_cast<double>(set_size) / sigma);
  if (target >= 1e18) throw OverflowError("lattice: size target too large");
  Rank1Lattice lat;
  lat.dim = dim;
  lat.M = smallest_prime_above(static_cast<std::uint64_t>(target));
  lat.z.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) lat.z[i] = 1 + rng.below(lat.M - 1);
  return lat;
}

PointSet lattice_nodes(const Rank1Lattice& lat) {
  PointSet pts;
  pts.dim = lat.dim;
  pts.coords.resize(lat.dim * lat.M);
  const double invM = 1.0 / static_cast<double>(lat.M);
  for (std::uint64_t j = 0; j < lat.M; ++j) {
    for (std::size_t i = 0; i < lat.dim; ++i) {
      // j and z_i are both < M <= ~2^60, so j*z_i needs 128-bit headroom.
      const std::uint64_t r = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(j) * lat.z[i] % lat.M);
      pts.coords[j * lat.dim + i] = static_cast<double>(r) * invM;
    }
  }
  return pts;
}

std::uint64_t lattice_residue(const Rank1Lattice& lat, const Frequency& k) {
  if (k.dim() != lat.dim)
    throw DimensionMismatch("lattice_residue: frequency dimension mismatch");
  const __int128 M = lat.M;
  __int128 acc = 0;
  for (std::size_t i = 0; i < lat.dim; ++i) {
    __int128 term = static_cast<__int128>(k.k[i]) % M;
    acc = (acc + term * static_cast<__int128>(lat.z[i])) % M;
  }
  if (acc < 0) acc += M;
  return static_cast<std::uint64_t>(acc);
}

bool is_reconstructing(const Rank1Lattice& lat,
                       std::span<const Frequency> freqs) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(freqs.size() * 2);
  for (const Frequency& k : freqs) {
    if (!seen.insert(lattice_residue(lat, k)).second) return false;
  }
  return true;
}

namespace detail {

std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

namespace {

std::vector<Complex> fftw_transform(std::span<const Complex> in, int sign) {
  const std::size_t M = in.size();
  if (M == 0) throw Error("lattice_fft: empty input");
  std::vector<Complex> out(M);
  // FFTW's plan creation may touch the input array, so plan first on the
  // output buffer in-place, then copy the input in and execute.
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(M),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("lattice_fft: FFTW planning failed");
  std::copy(in.begin(), in.end(), out.begin());
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<Complex> lattice_fft(std::span<const Complex> samples) {
  std::vector<Complex> out = fftw_transform(samples, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (Complex& v : out) v *= scale;
  return out;
}

std::vector<Complex> lattice_ifft(std::span<const Complex> coeffs) {
  return fftw_transform(coeffs, FFTW_BACKWARD);
}

}  // namespace sparsespec
