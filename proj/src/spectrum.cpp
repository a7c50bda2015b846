#include "sparsespec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/core.h>

namespace sparsespec {

bool Frequency::is_zero() const {
  return std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; });
}

Frequency Frequency::negated() const {
  Frequency out;
  out.k.reserve(k.size());
  for (std::int64_t v : k) {
    if (v == INT64_MIN) throw OverflowError("frequency negation overflow");
    out.k.push_back(-v);
  }
  return out;
}

Frequency Frequency::checked_add(const Frequency& o) const {
  if (o.dim() != dim())
    throw DimensionMismatch(
        fmt::format("frequency add: dim {} vs {}", dim(), o.dim()));
  Frequency out;
  out.k.resize(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (__builtin_add_overflow(k[i], o.k[i], &out.k[i]))
      throw OverflowError("frequency sum overflow");
  }
  return out;
}

Frequency Frequency::checked_sub(const Frequency& o) const {
  if (o.dim() != dim())
    throw DimensionMismatch(
        fmt::format("frequency sub: dim {} vs {}", dim(), o.dim()));
  Frequency out;
  out.k.resize(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (__builtin_sub_overflow(k[i], o.k[i], &out.k[i]))
      throw OverflowError("frequency difference overflow");
  }
  return out;
}

std::int64_t Frequency::dot(const Frequency& o) const {
  if (o.dim() != dim())
    throw DimensionMismatch(
        fmt::format("frequency dot: dim {} vs {}", dim(), o.dim()));
  __int128 acc = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    acc += static_cast<__int128>(k[i]) * o.k[i];
  if (acc > INT64_MAX || acc < INT64_MIN)
    throw OverflowError("frequency dot product overflow");
  return static_cast<std::int64_t>(acc);
}

double Frequency::norm2_sq() const {
  double acc = 0;
  for (std::int64_t v : k) acc += static_cast<double>(v) * v;
  return acc;
}

bool Frequency::in_cube(std::uint64_t K) const {
  const std::int64_t hi = static_cast<std::int64_t>(K / 2);
  const std::int64_t lo = -hi + 1;
  return std::all_of(k.begin(), k.end(),
                     [&](std::int64_t v) { return v >= lo && v <= hi; });
}

void SparseSpectrum::check_dim(const Frequency& f) const {
  if (f.dim() != dim_)
    throw DimensionMismatch(
        fmt::format("spectrum dim {} vs frequency dim {}", dim_, f.dim()));
}

void SparseSpectrum::set(const Frequency& k, Complex v) {
  check_dim(k);
  if (v == Complex(0.0, 0.0)) {
    c_.erase(k);
  } else {
    c_[k] = v;
  }
}

void SparseSpectrum::add(const Frequency& k, Complex v) {
  check_dim(k);
  auto it = c_.find(k);
  if (it == c_.end()) {
    if (v != Complex(0.0, 0.0)) c_.emplace(k, v);
    return;
  }
  it->second += v;
  if (it->second == Complex(0.0, 0.0)) c_.erase(it);
}

Complex SparseSpectrum::at(const Frequency& k) const {
  check_dim(k);
  auto it = c_.find(k);
  return it == c_.end() ? Complex(0.0, 0.0) : it->second;
}

std::vector<Frequency> SparseSpectrum::support() const {
  std::vector<Frequency> out;
  out.reserve(c_.size());
  for (const auto& [k, v] : c_) out.push_back(k);
  return out;
}

SpectrumNorms spectrum_norms(const SparseSpectrum& s) {
  SpectrumNorms n{0, 0, 0};
  double l2sq = 0, hsq = 0;
  for (const auto& [k, v] : s.entries()) {
    const double m = std::abs(v);
    n.l1 += m;
    l2sq += m * m;
    hsq += kTwoPi * kTwoPi * k.norm2_sq() * m * m;
  }
  n.l2 = std::sqrt(l2sq);
  n.h_semi = std::sqrt(hsq);
  return n;
}

SparseSpectrum spectrum_add(const SparseSpectrum& a, const SparseSpectrum& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("spectrum add: dimension mismatch");
  SparseSpectrum out = a;
  for (const auto& [k, v] : b.entries()) out.add(k, v);
  return out;
}

SparseSpectrum spectrum_sub(const SparseSpectrum& a, const SparseSpectrum& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("spectrum sub: dimension mismatch");
  SparseSpectrum out = a;
  for (const auto& [k, v] : b.entries()) out.add(k, -v);
  return out;
}

SparseSpectrum spectrum_scale(const SparseSpectrum& a, Complex factor) {
  SparseSpectrum out(a.dim());
  if (factor == Complex(0.0, 0.0)) return out;
  for (const auto& [k, v] : a.entries()) out.set(k, v * factor);
  return out;
}

SparseSpectrum best_s_term(const SparseSpectrum& s, std::size_t count) {
  if (count >= s.size()) return s;
  // Sort by descending magnitude, ties by ascending frequency; map iteration
  // is already lexicographic so a stable sort keeps the tie order.
  std::vector<std::pair<Frequency, Complex>> items(s.entries().begin(),
                                                   s.entries().end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& x, const auto& y) {
                     return std::abs(x.second) > std::abs(y.second);
                   });
  SparseSpectrum out(s.dim());
  for (std::size_t i = 0; i < count; ++i) out.set(items[i].first, items[i].second);
  return out;
}

SparseSpectrum restrict_to_cube(const SparseSpectrum& s, std::uint64_t K) {
  SparseSpectrum out(s.dim());
  for (const auto& [k, v] : s.entries())
    if (k.in_cube(K)) out.set(k, v);
  return out;
}

SparseSpectrum symmetrize_real(const SparseSpectrum& s) {
  SparseSpectrum out(s.dim());
  for (const auto& [k, v] : s.entries()) {
    const Complex mirror = std::conj(s.at(k.negated()));
    const Complex avg = 0.5 * (v + mirror);
    // Writes k from both members of the pair give the same value, but only
    // set entries that are nonzero after averaging.
    out.set(k, avg);
    out.set(k.negated(), std::conj(avg));
  }
  return out;
}

Complex evaluate_trig_poly(const SparseSpectrum& s, std::span<const double> x) {
  if (x.size() != s.dim())
    throw DimensionMismatch("evaluate_trig_poly: point dimension mismatch");
  Complex acc(0.0, 0.0);
  for (const auto& [k, v] : s.entries()) {
    double dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      dot += static_cast<double>(k.k[i]) * x[i];
    // Reduce before multiplying by 2 pi: |dot| can reach ~1e6 and the
    // reduction keeps the phase accurate to ~1e-10 absolute.
    const double ph = kTwoPi * std::fmod(dot, 1.0);
    acc += v * Complex(std::cos(ph), std::sin(ph));
  }
  return acc;
}

SampledFunction to_sampled_function(SparseSpectrum s) {
  const std::size_t d = s.dim();
  return SampledFunction{
      d, [spec = std::move(s)](std::span<const double> x) {
        return evaluate_trig_poly(spec, x);
      }};
}

GradientFn gradient_from_spectrum(SparseSpectrum s) {
  return [spec = std::move(s)](std::span<const double> x) {
    if (x.size() != spec.dim())
      throw DimensionMismatch("gradient: point dimension mismatch");
    std::vector<double> g(x.size(), 0.0);
    for (const auto& [k, v] : spec.entries()) {
      double dot = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        dot += static_cast<double>(k.k[i]) * x[i];
      const double ph = kTwoPi * std::fmod(dot, 1.0);
      // d/dx_j Re[v e^{2 pi i k.x}] = Re[2 pi i k_j v e^{2 pi i k.x}]
      const Complex e(std::cos(ph), std::sin(ph));
      const Complex dv = Complex(0.0, kTwoPi) * v * e;
      for (std::size_t j = 0; j < x.size(); ++j)
        g[j] += static_cast<double>(k.k[j]) * dv.real();
    }
    return g;
  };
}

}  // namespace sparsespec
