#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sparsespec/types.hpp"

namespace sparsespec {

// Integer frequency vector k in Z^d. Comparison is lexicographic; arithmetic
// is overflow-checked so iterated stamping sums cannot wrap silently.
struct Frequency {
  std::vector<std::int64_t> k;

  Frequency() = default;
  explicit Frequency(std::vector<std::int64_t> comps) : k(std::move(comps)) {}
  static Frequency zero(std::size_t dim) {
    return Frequency(std::vector<std::int64_t>(dim, 0));
  }

  std::size_t dim() const { return k.size(); }
  bool operator==(const Frequency& o) const { return k == o.k; }
  bool operator<(const Frequency& o) const { return k < o.k; }

  bool is_zero() const;
  Frequency negated() const;
  Frequency checked_add(const Frequency& o) const;  // throws OverflowError
  Frequency checked_sub(const Frequency& o) const;
  std::int64_t dot(const Frequency& o) const;
  double norm2_sq() const;  // ||k||_2^2
  // Component-wise membership in {-K/2+1, ..., K/2}.
  bool in_cube(std::uint64_t K) const;
};

struct FrequencyHash {
  std::size_t operator()(const Frequency& f) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : f.k) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Finitely supported Fourier coefficient map k -> c_k. Canonical form: exact
// zeros are never stored; iteration order is lexicographic in k. Instances
// are treated as immutable values once built; all reads are const and safe to
// share across threads.
class SparseSpectrum {
 public:
  explicit SparseSpectrum(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }

  // v == 0 erases the entry (canonical zero-drop; only exact zeros).
  void set(const Frequency& k, Complex v);
  void add(const Frequency& k, Complex v);  // accumulate, drop exact zero
  Complex at(const Frequency& k) const;     // 0 for absent entries
  bool contains(const Frequency& k) const { return c_.count(k) != 0; }

  const std::map<Frequency, Complex>& entries() const { return c_; }
  std::vector<Frequency> support() const;

 private:
  void check_dim(const Frequency& k) const;
  std::size_t dim_;
  std::map<Frequency, Complex> c_;
};

struct SpectrumNorms {
  double l1;      // sum |c_k|
  double l2;      // sqrt(sum |c_k|^2)
  double h_semi;  // sqrt(sum (2 pi)^2 ||k||^2 |c_k|^2)
};

SpectrumNorms spectrum_norms(const SparseSpectrum& s);

SparseSpectrum spectrum_add(const SparseSpectrum& a, const SparseSpectrum& b);
SparseSpectrum spectrum_sub(const SparseSpectrum& a, const SparseSpectrum& b);
SparseSpectrum spectrum_scale(const SparseSpectrum& a, Complex factor);

// Keeps the s largest-magnitude entries; exact magnitude ties are broken by
// lexicographic frequency order (smallest kept first). s >= size is identity.
SparseSpectrum best_s_term(const SparseSpectrum& s, std::size_t count);

// Restriction to the cube {-K/2+1,...,K/2}^d.
SparseSpectrum restrict_to_cube(const SparseSpectrum& s, std::uint64_t K);

// Enforces the real-field symmetry c_{-k} = conj(c_k): conjugate pairs are
// averaged, missing mirrors added. The zero entry is forced real.
SparseSpectrum symmetrize_real(const SparseSpectrum& s);

// sum_k c_k e^{2 pi i k.x}
Complex evaluate_trig_poly(const SparseSpectrum& s, std::span<const double> x);

// Point-evaluable function on the torus [0,1)^d. The callable must be pure
// (thread-safe): sampling kernels invoke it concurrently.
struct SampledFunction {
  std::size_t dim = 0;
  std::function<Complex(std::span<const double>)> eval;
};

// Gradient oracle: x -> (d/dx_1 f, ..., d/dx_d f), real fields.
using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

// Flat row-major point storage: coords[i*dim + j] is coordinate j of point i.
struct PointSet {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> operator[](std::size_t i) const {
    return {coords.data() + i * dim, dim};
  }
};

// SampledFunction view of a spectrum (used by oracles and the CLI).
SampledFunction to_sampled_function(SparseSpectrum s);

// Gradient of the real field with spectrum s (trig differentiation).
GradientFn gradient_from_spectrum(SparseSpectrum s);

}  // namespace sparsespec
