#pragma once

#include <cstdint>

#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

// Slow, independent reference computations. The main pipeline never calls
// them; tests and the CLI experiment driver compare against them.

// Full tensor-grid FFT of g on K points per dimension (K even). Returns all
// coefficients with magnitude above 1e-13, frequencies in the cube
// {-K/2+1,...,K/2}^d. Guard: K^d <= 2^24.
SparseSpectrum dense_fourier_coeffs(const SampledFunction& g, std::uint64_t K,
                                    Exec exec = Exec::parallel);

// Galerkin solve of -div(a grad u) = f on the full mean-zero cube
// {-K/2+1,...,K/2}^d \ {0}. Guard: K^d <= 2^14 + 1 unknowns. Supports of
// a_hat and f_hat must lie inside the cube; f_hat must have no zero entry.
SparseSpectrum dense_galerkin_solve(const SparseSpectrum& a_hat,
                                    const SparseSpectrum& f_hat,
                                    std::uint64_t K);

// One-dimensional reference: second-order finite-volume discretization of
// -(a u')' = f on n_mesh cells, periodic, mean pinned to zero, followed by a
// DFT of the grid solution. Returns coefficients above 1e-15 magnitude.
SparseSpectrum fine_mesh_ode_solve(const SampledFunction& a,
                                   const SampledFunction& f,
                                   std::size_t n_mesh);

}  // namespace sparsespec
