#include "sparsespec/oracle.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <vector>

#include <fmt/core.h>

#include "fftw_lock.hpp"
#include "sparsespec/lattice.hpp"

namespace sparsespec {

namespace {

std::uint64_t checked_grid_total(std::uint64_t K, std::size_t d,
                                 std::uint64_t limit, const char* who) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > limit / K)
      throw Error(fmt::format("{}: K^d exceeds the guard ({})", who, limit));
    total *= K;
  }
  if (total > limit)
    throw Error(fmt::format("{}: K^d exceeds the guard ({})", who, limit));
  return total;
}

// Digits of i in base K, most significant first (row-major grid order).
void grid_decode(std::uint64_t i, std::uint64_t K, std::span<std::int64_t> out) {
  for (std::size_t j = out.size(); j-- > 0;) {
    out[j] = static_cast<std::int64_t>(i % K);
    i /= K;
  }
}

std::int64_t to_signed_freq(std::int64_t m, std::uint64_t K) {
  return m <= static_cast<std::int64_t>(K / 2)
             ? m
             : m - static_cast<std::int64_t>(K);
}

}  // namespace

SparseSpectrum dense_fourier_coeffs(const SampledFunction& g, std::uint64_t K,
                                    Exec exec) {
  if (g.dim == 0 || !g.eval)
    throw Error("dense_fourier_coeffs: ill-formed function");
  if (K < 2 || K % 2 != 0)
    throw Error("dense_fourier_coeffs: K must be even and >= 2");
  const std::size_t d = g.dim;
  const std::uint64_t total =
      checked_grid_total(K, d, std::uint64_t{1} << 24, "dense_fourier_coeffs");

  std::vector<Complex> buf(total);

  // Plan before the buffer holds data (planning may scribble on it), fill,
  // then execute.
  std::vector<int> n(d, static_cast<int>(K));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
    plan = fftw_plan_dft(static_cast<int>(d), n.data(),
                         reinterpret_cast<fftw_complex*>(buf.data()),
                         reinterpret_cast<fftw_complex*>(buf.data()),
                         FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr)
    throw Error("dense_fourier_coeffs: FFTW planning failed");

  const auto fill = [&](std::int64_t i, std::vector<std::int64_t>& digits,
                        std::vector<double>& x) {
    grid_decode(static_cast<std::uint64_t>(i), K, digits);
    for (std::size_t j = 0; j < d; ++j)
      x[j] = static_cast<double>(digits[j]) / static_cast<double>(K);
    buf[static_cast<std::size_t>(i)] = g.eval(x);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      std::vector<std::int64_t> digits(d);
      std::vector<double> x(d);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i)
        fill(i, digits, x);
    }
  } else {
    std::vector<std::int64_t> digits(d);
    std::vector<double> x(d);
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i)
      fill(i, digits, x);
  }

  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }

  const double scale = 1.0 / static_cast<double>(total);
  SparseSpectrum out(d);
  std::vector<std::int64_t> digits(d);
  for (std::uint64_t i = 0; i < total; ++i) {
    const Complex c = buf[i] * scale;
    if (std::abs(c) <= 1e-13) continue;
    grid_decode(i, K, digits);
    std::vector<std::int64_t> k(d);
    for (std::size_t j = 0; j < d; ++j) k[j] = to_signed_freq(digits[j], K);
    out.set(Frequency(std::move(k)), c);
  }
  return out;
}

SparseSpectrum dense_galerkin_solve(const SparseSpectrum& a_hat,
                                    const SparseSpectrum& f_hat,
                                    std::uint64_t K) {
  const std::size_t d = a_hat.dim();
  if (f_hat.dim() != d)
    throw DimensionMismatch("dense_galerkin_solve: dimension mismatch");
  if (K < 2 || K % 2 != 0)
    throw Error("dense_galerkin_solve: K must be even and >= 2");
  const std::uint64_t total = checked_grid_total(
      K, d, (std::uint64_t{1} << 14) + 2, "dense_galerkin_solve");
  for (const auto& [k, v] : a_hat.entries())
    if (!k.in_cube(K))
      throw Error("dense_galerkin_solve: diffusion support outside the cube");
  for (const auto& [k, v] : f_hat.entries()) {
    if (!k.in_cube(K))
      throw Error("dense_galerkin_solve: rhs support outside the cube");
    if (k.is_zero())
      throw Error("dense_galerkin_solve: rhs must be mean-zero");
  }

  // Lexicographic odometer over {-K/2+1,...,K/2}^d, zero excluded.
  std::vector<Frequency> index;
  index.reserve(total - 1);
  const std::int64_t lo = -static_cast<std::int64_t>(K / 2) + 1;
  const std::int64_t hi = static_cast<std::int64_t>(K / 2);
  std::vector<std::int64_t> cur(d, lo);
  for (std::uint64_t i = 0; i < total; ++i) {
    Frequency k{cur};
    if (!k.is_zero()) index.push_back(std::move(k));
    for (std::size_t j = d; j-- > 0;) {
      if (++cur[j] <= hi) break;
      cur[j] = lo;
    }
  }
  std::unordered_map<Frequency, std::size_t, FrequencyHash> pos;
  pos.reserve(2 * index.size());
  for (std::size_t i = 0; i < index.size(); ++i) pos.emplace(index[i], i);

  const std::int64_t n = static_cast<std::int64_t>(index.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (std::int64_t r = 0; r < n; ++r) {
    const Frequency& k = index[r];
    for (const auto& [q, aq] : a_hat.entries()) {
      auto it = pos.find(k.checked_sub(q));
      if (it == pos.end()) continue;
      const Frequency& l = index[it->second];
      A(r, static_cast<std::int64_t>(it->second)) =
          (kTwoPi * kTwoPi * static_cast<double>(l.dot(k))) * aq;
    }
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  for (const auto& [k, v] : f_hat.entries())
    rhs[static_cast<std::int64_t>(pos.at(k))] = v;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Eigen::VectorXcd u = lu.solve(rhs);
  const double f_norm = rhs.norm();
  if (f_norm > 0) {
    const double res = (A * u - rhs).norm() / f_norm;
    if (!(res <= 1e-8))
      throw SolverFailure(
          fmt::format("dense_galerkin_solve: residual {:.3e}", res));
  }

  SparseSpectrum out(d);
  for (std::int64_t i = 0; i < n; ++i)
    if (u[i] != Complex(0.0, 0.0)) out.set(index[i], u[i]);
  return out;
}

SparseSpectrum fine_mesh_ode_solve(const SampledFunction& a,
                                   const SampledFunction& f,
                                   std::size_t n_mesh) {
  if (a.dim != 1 || f.dim != 1)
    throw DimensionMismatch("fine_mesh_ode_solve: one-dimensional only");
  if (n_mesh < 4 || n_mesh > (std::size_t{1} << 22))
    throw Error("fine_mesh_ode_solve: mesh size out of range");
  const std::int64_t n = static_cast<std::int64_t>(n_mesh);
  const double h = 1.0 / static_cast<double>(n);

  // Face-centered diffusion samples: face i sits at (i+1)/n between cells
  // i and i+1 (periodic).
  std::vector<double> face(n_mesh);
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1) * h;
    face[static_cast<std::size_t>(i)] = a.eval(std::span<const double>(&x, 1)).real();
  }

  // Second-order finite volumes for -(a u')' = f with the mean pinned to
  // zero through a bordered row/column (unknown n is the multiplier).
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(5 * n) + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (std::int64_t i = 0; i < n; ++i) {
    const double a_right = face[static_cast<std::size_t>(i)];
    const double a_left = face[static_cast<std::size_t>((i + n - 1) % n)];
    const double inv_h2 = 1.0 / (h * h);
    trip.emplace_back(i, i, (a_left + a_right) * inv_h2);
    trip.emplace_back(i, (i + n - 1) % n, -a_left * inv_h2);
    trip.emplace_back(i, (i + 1) % n, -a_right * inv_h2);
    trip.emplace_back(i, n, 1.0);
    trip.emplace_back(n, i, 1.0);
    const double x = (static_cast<double>(i) + 0.5) * h;
    rhs[i] = f.eval(std::span<const double>(&x, 1)).real();
  }
  Eigen::SparseMatrix<double> A(n + 1, n + 1);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SolverFailure("fine_mesh_ode_solve: sparse factorization failed");
  Eigen::VectorXd u = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw SolverFailure("fine_mesh_ode_solve: sparse solve failed");

  // Cell centers sit at (i+1/2)/n, so the grid DFT picks up a half-sample
  // phase: u_hat_k = e^{-i pi k / n} (1/n) sum_i u_i e^{-2 pi i k i / n}.
  std::vector<Complex> cells(n_mesh);
  for (std::int64_t i = 0; i < n; ++i)
    cells[static_cast<std::size_t>(i)] = Complex(u[i], 0.0);
  const std::vector<Complex> bins = lattice_fft(cells);

  SparseSpectrum out(1);
  for (std::int64_t m = 0; m < n; ++m) {
    const std::int64_t k = to_signed_freq(m, n_mesh);
    const double ang = -M_PI * static_cast<double>(k) / static_cast<double>(n);
    const Complex c =
        bins[static_cast<std::size_t>(m)] * Complex(std::cos(ang), std::sin(ang));
    if (std::abs(c) > 1e-15) out.set(Frequency({k}), c);
  }
  return out;
}

}  // namespace sparsespec
