#include "sparsespec/sft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/core.h>

#include "sparsespec/kernels.hpp"

namespace sparsespec {

namespace {

void validate(const SftConfig& cfg) {
  if (cfg.dim == 0) throw DimensionMismatch("sft: dim must be positive");
  if (cfg.K < 2 || cfg.K % 2 != 0)
    throw Error("sft: bandwidth K must be even and >= 2");
  if (cfg.s == 0) throw Error("sft: sparsity s must be positive");
  if (!(cfg.sigma > 0.0) || cfg.sigma > 1.0)
    throw Error("sft: sigma must lie in (0, 1]");
}

}  // namespace

Frequency decode_frequency(Complex base, std::span<const Complex> shifted,
                           double delta, std::uint64_t K) {
  if (std::abs(base) == 0.0)
    throw DimensionMismatch("decode_frequency: zero base bin");
  const std::int64_t hi = static_cast<std::int64_t>(K / 2);
  const std::int64_t lo = -hi + 1;
  Frequency k;
  k.k.resize(shifted.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    const double phase = std::arg(shifted[i] / base);
    const double raw = phase / (kTwoPi * delta);
    const std::int64_t v = std::llround(raw);
    if (v < lo || v > hi)  // boundary K/2 accepted
      throw DecodingFailure(
          fmt::format("decoded component {} outside cube [{}..{}]", v, lo, hi));
    k.k[i] = v;
  }
  return k;
}

SparseSpectrum sft(const SampledFunction& g, const SftConfig& cfg,
                   SftDiagnostics* diag) {
  validate(cfg);
  if (g.dim != cfg.dim)
    throw DimensionMismatch("sft: function dimension mismatch");

  Rng rng(cfg.seed);
  const std::size_t set_size = 2 * cfg.s;
  const Rank1Lattice lat =
      generate_random_lattice(cfg.dim, cfg.K, set_size, cfg.sigma, rng);
  const double delta = 1.0 / (2.0 * static_cast<double>(cfg.K));

  // One unshifted pass plus one pass per coordinate, each of M samples.
  const PointSet base_pts = lattice_nodes(lat);
  std::vector<std::vector<Complex>> transforms(cfg.dim + 1);
  transforms[0] = lattice_fft(sample_function(g, base_pts));
  for (std::size_t i = 0; i < cfg.dim; ++i) {
    const PointSet shifted = shift_points(base_pts, i, delta);
    transforms[i + 1] = lattice_fft(sample_function(g, shifted));
  }

  if (diag != nullptr) {
    *diag = SftDiagnostics{};
    diag->lattice = lat;
    diag->samples_taken = (cfg.dim + 1) * lat.M;
  }

  const std::vector<Complex>& base = transforms[0];
  double max_mag = 0;
  for (const Complex& v : base) max_mag = std::max(max_mag, std::abs(v));
  if (max_mag == 0.0) return SparseSpectrum(cfg.dim);  // zero input
  const double threshold = 1e-10 * max_mag;

  // Bins in decreasing magnitude, exact ties by bin index.
  std::vector<std::uint64_t> order(lat.M);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) {
                     return std::abs(base[a]) > std::abs(base[b]);
                   });

  std::map<Frequency, Complex> accepted;
  std::vector<Complex> shifted_bins(cfg.dim);
  std::size_t significant = 0;
  std::size_t skipped = 0, collisions = 0;
  for (std::uint64_t m : order) {
    if (accepted.size() >= set_size) break;
    if (std::abs(base[m]) < threshold) break;  // remaining bins are noise
    ++significant;
    for (std::size_t i = 0; i < cfg.dim; ++i)
      shifted_bins[i] = transforms[i + 1][m];
    Frequency k;
    try {
      k = decode_frequency(base[m], shifted_bins, delta, cfg.K);
    } catch (const DecodingFailure&) {
      // Genuine content outside the requested cube (or a hopelessly noisy
      // bin). The transform reports the cube-restricted spectrum, so skip
      // and continue down the magnitude order.
      ++skipped;
      continue;
    }
    auto it = accepted.find(k);
    if (it != accepted.end()) {
      // Two bins decoding to the same frequency: keep the larger magnitude.
      // Bins arrive in decreasing magnitude, so the existing entry wins.
      ++collisions;
      continue;
    }
    accepted.emplace(std::move(k), base[m]);
  }

  if (accepted.empty() && significant > 0)
    throw DecodingFailure(
        fmt::format("sft: all {} significant bins decoded outside the cube "
                    "(bandwidth K={} too small for this input)",
                    significant, cfg.K));

  if (diag != nullptr) {
    diag->significant_bins = significant;
    diag->out_of_cube_bins = skipped;
    diag->collision_bins = collisions;
  }

  SparseSpectrum out(cfg.dim);
  for (const auto& [k, v] : accepted) out.set(k, v);
  return out;
}

SftErrorBounds sft_error_bounds(const SftConfig& cfg, double tail_l1,
                                double opt_tail_l1) {
  validate(cfg);
  if (tail_l1 < 0 || opt_tail_l1 < 0)
    throw Error("sft_error_bounds: tail norms must be nonnegative");
  const double Kd = static_cast<double>(cfg.K);
  const double rs = std::sqrt(static_cast<double>(cfg.s));
  SftErrorBounds b{};
  if (tail_l1 == 0.0) {
    b.l2 = (25.0 + 3.0 * Kd) * rs * opt_tail_l1;
  } else {
    b.l2 = (25.0 + 3.0 * Kd) * (opt_tail_l1 / rs + rs * tail_l1);
  }
  b.linf = (33.0 + 4.0 * Kd) * (opt_tail_l1 + tail_l1);
  return b;
}

}  // namespace sparsespec
