#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "sparsespec/oracle.hpp"
#include "sparsespec/rng.hpp"
#include "sparsespec/sft.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

using namespace sparsespec;

namespace {

Frequency fr(std::vector<std::int64_t> k) { return Frequency(std::move(k)); }

Complex unit_phase(double t) { return Complex(std::cos(t), std::sin(t)); }

SampledFunction single_mode(std::vector<std::int64_t> k, Complex c) {
  SparseSpectrum s(k.size());
  s.set(Frequency(std::move(k)), c);
  return to_sampled_function(s);
}

bool spectra_close(const SparseSpectrum& a, const SparseSpectrum& b,
                   double tol) {
  return spectrum_norms(spectrum_sub(a, b)).l2 < tol;
}

}  // namespace

TEST_CASE("decode_frequency pinned phase ratios") {
  const Complex base(0.8, -0.3);

  // Equal shifted and base samples mean zero phase advance: k = 0.
  const std::vector<Complex> same = {base, base, base};
  CHECK(decode_frequency(base, same, 1.0 / 16.0, 8) == fr({0, 0, 0}));

  // d = 1, K = 8, delta = 1/16: ratio e^{2 pi i 3/16} decodes to k = 3.
  const std::vector<Complex> r3 = {base * unit_phase(kTwoPi * 3.0 / 16.0)};
  CHECK(decode_frequency(base, r3, 1.0 / 16.0, 8) == fr({3}));

  // Phase pi is the cube boundary component K/2.
  const std::vector<Complex> rpi = {base * unit_phase(kTwoPi * 4.0 / 16.0)};
  CHECK(decode_frequency(base, rpi, 1.0 / 16.0, 8) == fr({4}));

  // Negative phases decode to negative components.
  const std::vector<Complex> rm2 = {base * unit_phase(-kTwoPi * 2.0 / 16.0)};
  CHECK(decode_frequency(base, rm2, 1.0 / 16.0, 8) == fr({-2}));

  // Component decoding past K/2 is out of cube.
  const std::vector<Complex> r5 = {base * unit_phase(kTwoPi * 5.0 / 16.0)};
  CHECK_THROWS_AS((void)decode_frequency(base, r5, 1.0 / 16.0, 8),
                  DecodingFailure);

  CHECK_THROWS_AS(
      (void)decode_frequency(Complex(0, 0), r3, 1.0 / 16.0, 8),
      DimensionMismatch);
}

TEST_CASE("sft of the zero function is empty") {
  SampledFunction zero{3, [](std::span<const double>) { return Complex(0, 0); }};
  SftConfig cfg{3, 16, 2, 0.05, 1};
  SftDiagnostics diag;
  const SparseSpectrum got = sft(zero, cfg, &diag);
  CHECK(got.empty());
  CHECK(diag.significant_bins == 0);
  CHECK(diag.samples_taken == 4 * diag.lattice.M);
}

TEST_CASE("sft recovers a single mode exactly across seeds") {
  // 2.5 e^{2 pi i k.x} in d = 5, K = 50, s = 1.
  const std::vector<std::int64_t> k = {7, -12, 0, 25, -24};
  const SampledFunction g = single_mode(k, Complex(2.5, 0));
  SparseSpectrum want(5);
  want.set(fr({7, -12, 0, 25, -24}), Complex(2.5, 0));

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SftConfig cfg{5, 50, 1, 0.05, seed};
    const SparseSpectrum got = sft(g, cfg);
    if (got.size() == 1 && spectra_close(got, want, 1e-8)) ++hits;
  }
  // Failure budget sigma = 0.05; a single-mode set cannot even collide, so
  // every seed should succeed.
  CHECK(hits == 50);
}

TEST_CASE("sft recovers a cosine pair") {
  SparseSpectrum s(2);
  s.set(fr({3, -1}), Complex(0.5, 0));
  s.set(fr({-3, 1}), Complex(0.5, 0));
  const SampledFunction g = to_sampled_function(s);
  SftConfig cfg{2, 16, 2, 0.05, 4};
  const SparseSpectrum got = sft(g, cfg);
  CHECK(got.size() == 2);
  CHECK(spectra_close(got, s, 1e-10));
}

TEST_CASE("sft returns at most 2s in-cube modes") {
  Rng rng(23);
  SparseSpectrum s(2);
  for (int i = 0; i < 12; ++i)
    s.set(fr({rng.range_int(-7, 8), rng.range_int(-7, 8)}),
          Complex(rng.uniform(0.5, 1), rng.uniform(-0.5, 0.5)));
  const SampledFunction g = to_sampled_function(s);
  for (std::uint64_t seed : {0, 1, 2}) {
    SftConfig cfg{2, 16, 3, 0.05, seed};
    const SparseSpectrum got = sft(g, cfg);
    CHECK(got.size() <= 6);
    for (const auto& [k, v] : got.entries()) CHECK(k.in_cube(16));
  }
}

TEST_CASE("sft is deterministic in the seed") {
  Rng rng(29);
  SparseSpectrum s(3);
  for (int i = 0; i < 5; ++i)
    s.set(fr({rng.range_int(-7, 8), rng.range_int(-7, 8), rng.range_int(-7, 8)}),
          Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  const SampledFunction g = to_sampled_function(s);
  SftConfig cfg{3, 16, 5, 0.05, 77};
  const SparseSpectrum a = sft(g, cfg);
  const SparseSpectrum b = sft(g, cfg);
  REQUIRE(a.size() == b.size());
  for (const auto& [k, v] : a.entries()) CHECK(b.at(k) == v);
}

TEST_CASE("out-of-cube content is skipped, in-cube content kept") {
  // K = 8 cube in d = 1 is {-3,...,4}. Frequency 5 is outside; its bin
  // decodes to 5 and must be dropped while the in-cube mode survives.
  SparseSpectrum s(1);
  s.set(fr({5}), Complex(1.0, 0));
  s.set(fr({1}), Complex(0.3, 0));
  const SampledFunction g = to_sampled_function(s);
  SftConfig cfg{1, 8, 1, 1.0, 9};
  SftDiagnostics diag;
  const SparseSpectrum got = sft(g, cfg, &diag);
  REQUIRE(got.size() == 1);
  CHECK(std::abs(got.at(fr({1})) - Complex(0.3, 0)) < 1e-12);
  CHECK(diag.out_of_cube_bins >= 1);
}

TEST_CASE("sft throws only when every significant bin is out of cube") {
  SparseSpectrum s(1);
  s.set(fr({5}), Complex(1.0, 0));
  const SampledFunction g = to_sampled_function(s);
  SftConfig cfg{1, 8, 1, 1.0, 9};
  CHECK_THROWS_AS((void)sft(g, cfg), DecodingFailure);
}

TEST_CASE("sft dominates the dense spectrum energy on compressible input") {
  // Smooth gaussian-like bump: coefficients decay fast, so the best 2s-term
  // l2 mass captured by sft should be within a whisker of the dense optimum.
  SampledFunction g{
      2, [](std::span<const double> x) {
        const double cx = std::cos(kTwoPi * x[0]);
        const double cy = std::cos(kTwoPi * x[1]);
        return Complex(std::exp(cx + 0.7 * cy), 0);
      }};
  const std::uint64_t K = 16;
  const SparseSpectrum dense = dense_fourier_coeffs(g, K, Exec::serial);
  const std::size_t s = 6;
  const SparseSpectrum best = best_s_term(dense, 2 * s);

  SftConfig cfg{2, K, s, 0.05, 12};
  const SparseSpectrum got = sft(g, cfg);

  // Captured energy at least that of the best 2s-term approximation, up to
  // a tiny multiplicative slack for aliased tail mass.
  CHECK(spectrum_norms(got).l2 >= spectrum_norms(best).l2 / (1 + 1e-6));
  // And every reported coefficient is close to its dense counterpart, the
  // difference being aliased tail (bounded crudely by the total l1 tail).
  double tail_l1 = 0;
  for (const auto& [k, v] : dense.entries())
    if (!got.contains(k)) tail_l1 += std::abs(v);
  for (const auto& [k, v] : got.entries())
    CHECK(std::abs(v - dense.at(k)) <= tail_l1 + 1e-10);
}

TEST_CASE("sft_error_bounds pinned values") {
  SftConfig cfg{10, 100, 4, 0.05, 0};

  const SftErrorBounds zero = sft_error_bounds(cfg, 0.0, 0.0);
  CHECK(zero.l2 == 0.0);
  CHECK(zero.linf == 0.0);

  // K = 100, s = 4, opt = 0.01, no out-of-cube tail:
  // l2 = (25 + 300) * 2 * 0.01 = 6.5, linf = (33 + 400) * 0.01 = 4.33.
  const SftErrorBounds b = sft_error_bounds(cfg, 0.0, 0.01);
  CHECK(b.l2 == doctest::Approx(6.5));
  CHECK(b.linf == doctest::Approx(4.33));

  // Positive out-of-cube tail switches to the two-term l2 form.
  const SftErrorBounds t = sft_error_bounds(cfg, 0.001, 0.01);
  CHECK(t.l2 == doctest::Approx(325 * (0.01 / 2.0 + 2.0 * 0.001)));
  CHECK(t.linf == doctest::Approx(433 * (0.01 + 0.001)));

  // Monotone in both tails.
  CHECK(sft_error_bounds(cfg, 0.0, 0.02).l2 > b.l2);
  CHECK(sft_error_bounds(cfg, 0.002, 0.01).l2 > t.l2);
}

TEST_CASE("sft diagnostics count samples") {
  const SampledFunction g = single_mode({1, 1}, Complex(1, 0));
  SftConfig cfg{2, 8, 1, 0.5, 3};
  SftDiagnostics diag;
  (void)sft(g, cfg, &diag);
  // M = smallest prime above max(8, 4/0.5 = 8) = 11; samples = (d+1) M.
  CHECK(diag.lattice.M == 11);
  CHECK(diag.samples_taken == 3 * 11);
}
