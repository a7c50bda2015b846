#pragma once

#include <Eigen/Dense>
#include <unordered_map>
#include <vector>

#include "sparsespec/spectrum.hpp"
#include "sparsespec/stamping.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

// Operator data for -div(a grad u) + b . grad u + c u: the diffusion
// spectrum, optional advection component spectra, optional reaction spectrum.
// Pure diffusion leaves b empty and c empty.
struct AdrSpectra {
  SparseSpectrum a;
  std::vector<SparseSpectrum> b;
  SparseSpectrum c;

  explicit AdrSpectra(SparseSpectrum a_hat)
      : a(std::move(a_hat)), c(a.dim()) {}
  AdrSpectra(SparseSpectrum a_hat, std::vector<SparseSpectrum> b_hat,
             SparseSpectrum c_hat)
      : a(std::move(a_hat)), b(std::move(b_hat)), c(std::move(c_hat)) {}
};

// Dense Galerkin system on the stamped index. Entry for row k, column l:
//   (2 pi)^2 (l . k) a_hat_{k-l} + 2 pi i sum_j l_j b_hat_j[k-l] + c_hat_{k-l}.
// The zero frequency is excluded from the index unless c_hat has a nonzero
// zero entry (reaction makes the zero row invertible); pure diffusion fixes
// u_hat_0 = 0 by the mean-zero convention.
struct GalerkinSystem {
  std::vector<Frequency> index;  // lexicographic
  std::unordered_map<Frequency, std::size_t, FrequencyHash> pos;
  Eigen::MatrixXcd matrix;       // column-major, LAPACK-compatible
  AdrSpectra source;             // retained for matrix-free residual checks

  std::size_t size() const { return index.size(); }
};

// Row-parallel assembly: each row k walks the union of operator supports q
// and writes column l = k - q. O(|S^N| * |supports|) entries touched.
GalerkinSystem assemble(const SparseSpectrum& a_hat, const StampSet& stamp,
                        Exec exec = Exec::parallel);
GalerkinSystem assemble_adr(const AdrSpectra& op, const StampSet& stamp,
                            Exec exec = Exec::parallel);

// Independent serial reference: fills every (row, column) pair by direct
// coefficient lookup. O(|S^N|^2). Kept for equivalence tests and benchmarks.
GalerkinSystem assemble_reference(const SparseSpectrum& a_hat,
                                  const StampSet& stamp);

struct SolveStats {
  double condition_estimate = 0;  // 1-norm estimate from the LU factors
  double residual_rel = 0;        // ||A u - f|| / ||f||, matrix-free recompute
};

// Direct solve via LAPACK zgetrf/zgecon/zgetrs. The system matrix is
// overwritten with its LU factors (no copy is kept; systems reach several GB).
// Throws SolverFailure if the condition estimate exceeds 1e14 or the relative
// residual exceeds 1e-10. Entries of f_hat outside the index are rejected
// (DimensionMismatch) except a zero-frequency entry when the index dropped it.
SparseSpectrum galerkin_solve(GalerkinSystem& sys, const SparseSpectrum& f_hat,
                              SolveStats* stats = nullptr);

// Exact operator application in coefficient space:
// (L u)_k = sum_l [(2 pi)^2 (l.k) a_hat_{k-l} + ...] u_hat_l over the full
// support sum. Output support is contained in supp(u) + supports of the data.
SparseSpectrum apply_operator(const SparseSpectrum& a_hat,
                              const SparseSpectrum& u_hat);
SparseSpectrum apply_operator_adr(const AdrSpectra& op,
                                  const SparseSpectrum& u_hat);

struct EllipticityResult {
  bool ok = false;      // sum_{k != 0} |a_hat_k| < |a_hat_0|
  double a_min_lb = 0;  // |a_hat_0| - sum_{k != 0} |a_hat_k|
};

EllipticityResult ellipticity_check(const SparseSpectrum& a_hat);

}  // namespace sparsespec
