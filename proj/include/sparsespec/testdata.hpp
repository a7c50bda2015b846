#pragma once

#include <cstdint>

#include "sparsespec/pipeline.hpp"
#include "sparsespec/rng.hpp"
#include "sparsespec/spectrum.hpp"

namespace sparsespec {

// Benchmark problem families. All generators are deterministic in the Rng
// stream; draws happen in a fixed documented order. Generated fields carry
// exact spectra and gradient closures whenever they exist.

// Multiscale 1-D coefficient a(x) = (1/10) exp((0.6 + 0.2 cos(2 pi x)) /
// (1 + 0.7 sin(256 pi x))) with rhs f(x) = exp(-cos(2 pi x)) - mean, the mean
// taken by a 2^14-point trapezoid rule (periodic, so this is the plain grid
// average). a(0) = 0.1 e^{0.8}. Gradient closure attached; no exact spectra.
DiffusionProblem daubechies_1d();

// Exactly sparse diffusion: a = 4 + c_a cos(2 pi k_a . x),
// f = sin(2 pi k_f . x) with k_a, k_f uniform in the cube minus 0 and
// c_a uniform in [-1, 1]. Draw order: k_a components, k_f components, c_a.
// a_hat = {0: 4, +-k_a: c_a/2}; f_hat = {k_f: 1/(2i), -k_f: -1/(2i)}.
DiffusionProblem sparse_diffusion_problem(std::size_t d, std::uint64_t K,
                                          Rng& rng);
// Fixed-coefficient variant for dimension sweeps that hold c_a constant
// while redrawing frequencies. Draw order: k_a components, k_f components.
DiffusionProblem sparse_diffusion_problem(std::size_t d, std::uint64_t K,
                                          double c_a, Rng& rng);

// Higher sparsity variant: n_pairs cosine terms with coefficients uniform in
// [-1, 1] and distinct-up-to-sign nonzero frequencies, a_hat_0 =
// 4 ceil(||c||_2), same sine rhs. Draw order per attempt: term frequencies,
// k_f, coefficients. Ellipticity (sum |c_j| < a_hat_0) is checked per draw;
// failing draws are regenerated (at most 10 attempts, then
// EllipticityFailure).
DiffusionProblem high_sparsity_diffusion(std::size_t d, std::uint64_t K,
                                         std::size_t n_pairs, Rng& rng);
// Fixed-coefficient variant (coefficients held constant across a dimension
// sweep). Throws EllipticityFailure if c itself violates the check; only
// frequencies are drawn (term frequencies, then k_f).
DiffusionProblem high_sparsity_diffusion(std::size_t d, std::uint64_t K,
                                         std::span<const double> c, Rng& rng);

// Periodized Gaussian G_r(x) = (sqrt(2 pi)/r) sum_{m=-10..10}
// exp(-(2 pi)^2 (x - m)^2 / (2 r^2)) and its modulated tensor product
// G_{r,k}(x) = prod_j e^{2 pi i k_j x_j} G_r(x_j). Fourier sequence:
// G_r_hat(m) = e^{-r^2 m^2 / 2} (bump of width ~1/r around k after
// modulation).
double periodized_gaussian_1d(double r, double x);
double periodized_gaussian_1d_deriv(double r, double x);
Complex periodized_gaussian(double r, const Frequency& k,
                            std::span<const double> x);

// Compressible diffusion field a = c0 + sum_j c_j Re G_{r,k_j} with n_terms
// modulation frequencies drawn uniformly from box^d (box = {-24,...,25} or
// {-249,...,250} in the reference experiments), c_j uniform in [-1, 1],
// c0 = c0_factor * ceil(||c||_2), and rhs f = sin(2 pi k_f . x) with k_f
// drawn from the box minus 0. Draw order: k_j components per term, c_j, k_f.
// Exact spectrum attached for d <= 2 (entries above 1e-15); gradient closure
// for all d. Positivity of a is checked on 1e4 quasirandom points; failing
// draws regenerate (at most 10 attempts, then EllipticityFailure).
DiffusionProblem gaussian_series_problem(std::size_t d, std::size_t n_terms,
                                         double r, std::int64_t box_lo,
                                         std::int64_t box_hi, double c0_factor,
                                         Rng& rng);
// Fixed-coefficient variant (n_terms = c.size(); coefficients held constant
// across a dimension sweep). Draw order per attempt: k_j components, k_f.
DiffusionProblem gaussian_series_problem(std::size_t d, double r,
                                         std::int64_t box_lo,
                                         std::int64_t box_hi, double c0_factor,
                                         std::span<const double> c, Rng& rng);

// Advection-diffusion-reaction instance on T^3 as in the reference runs:
// a: 2 sine + 2 cosine terms + a_hat_0 = 4 ceil(||c_a||_2);
// each b_j: 5 sine + 5 cosine terms; c: 5 sine + 5 cosine terms +
// c_hat_0 = 4 ceil(||c_c||_2); f: 2 sine + 3 cosine terms. Frequencies
// uniform in {-49,...,50}^3, a/f coefficients uniform in [-1,1], b/c
// coefficients uniform in [0,1]. Draw order: a (freqs then coeffs, sine
// first), b_1..b_3, c, f. Exact spectra attached.
AdrProblem adr_problem(std::uint64_t K, Rng& rng);

}  // namespace sparsespec
