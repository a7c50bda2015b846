#include "sparsespec/errors.hpp"

#include <cmath>
#include <vector>

#include "sparsespec/kernels.hpp"

namespace sparsespec {

namespace {

double ratio_or_throw(double num, double den, const char* who) {
  if (den <= 0) throw Error(std::string(who) + ": zero right-hand side norm");
  return num / den;
}

// Root-mean-square of |v_i|^2 with a fixed serial reduction order, so the
// result is independent of how the values were produced.
double rms(const std::vector<Complex>& v) {
  double acc = 0;
  for (const Complex& x : v) acc += std::norm(x);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double mc_from_operator_image(const SparseSpectrum& lu_hat,
                              const SampledFunction& f, const PointSet& pts,
                              Exec exec) {
  const std::vector<Complex> lu = evaluate_many(lu_hat, pts, exec);
  const std::vector<Complex> fv = sample_function(f, pts, exec);
  std::vector<Complex> r(fv.size());
  for (std::size_t i = 0; i < fv.size(); ++i) r[i] = fv[i] - lu[i];
  return ratio_or_throw(rms(r), rms(fv), "proxy_error_mc");
}

}  // namespace

double proxy_error_exact(const SparseSpectrum& a_hat,
                         const SparseSpectrum& u_approx,
                         const SparseSpectrum& f_hat) {
  return proxy_error_exact_adr(AdrSpectra(a_hat), u_approx, f_hat);
}

double proxy_error_exact_adr(const AdrSpectra& op,
                             const SparseSpectrum& u_approx,
                             const SparseSpectrum& f_hat) {
  if (u_approx.dim() != op.a.dim() || f_hat.dim() != op.a.dim())
    throw DimensionMismatch("proxy_error_exact: dimension mismatch");
  const SparseSpectrum r =
      spectrum_sub(f_hat, apply_operator_adr(op, u_approx));
  return ratio_or_throw(spectrum_norms(r).l2, spectrum_norms(f_hat).l2,
                        "proxy_error_exact");
}

double proxy_error_mc(const DiffusionAccess& a, const SampledFunction& f,
                      const SparseSpectrum& u_approx, std::size_t n_samples,
                      std::uint64_t seed, Exec exec) {
  const std::size_t d = u_approx.dim();
  if (f.dim != d) throw DimensionMismatch("proxy_error_mc: dimension mismatch");
  if (n_samples == 0) throw Error("proxy_error_mc: need at least one sample");
  const PointSet pts = uniform_points(d, n_samples, seed);

  if (a.exact_spectrum) {
    return mc_from_operator_image(apply_operator(*a.exact_spectrum, u_approx),
                                  f, pts, exec);
  }
  if (a.values && a.gradient) {
    // Pointwise residual f + a lap(u) + grad a . grad u, with the u
    // derivatives taken exactly from the trig polynomial.
    SparseSpectrum lap(d);
    std::vector<SparseSpectrum> du;
    du.reserve(d);
    for (std::size_t j = 0; j < d; ++j) du.emplace_back(d);
    for (const auto& [k, v] : u_approx.entries()) {
      lap.set(k, v * (-kTwoPi * kTwoPi * k.norm2_sq()));
      for (std::size_t j = 0; j < d; ++j)
        du[j].set(k, v * Complex(0.0, kTwoPi * static_cast<double>(k.k[j])));
    }
    const std::vector<Complex> lap_v = evaluate_many(lap, pts, exec);
    std::vector<std::vector<Complex>> du_v(d);
    for (std::size_t j = 0; j < d; ++j) du_v[j] = evaluate_many(du[j], pts, exec);
    const std::vector<Complex> a_v = sample_function(*a.values, pts, exec);
    const std::vector<Complex> f_v = sample_function(f, pts, exec);

    const std::int64_t n = static_cast<std::int64_t>(n_samples);
    std::vector<Complex> r(n_samples);
    const auto residual_at = [&](std::int64_t i) {
      Complex acc = f_v[i] + a_v[i] * lap_v[i];
      const std::vector<double> ga = (*a.gradient)(pts[static_cast<std::size_t>(i)]);
      for (std::size_t j = 0; j < d; ++j) acc += ga[j] * du_v[j][i];
      r[static_cast<std::size_t>(i)] = acc;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) residual_at(i);
    } else {
      for (std::int64_t i = 0; i < n; ++i) residual_at(i);
    }
    return ratio_or_throw(rms(r), rms(f_v), "proxy_error_mc");
  }
  if (a.recovered_spectrum) {
    return mc_from_operator_image(
        apply_operator(*a.recovered_spectrum, u_approx), f, pts, exec);
  }
  throw UnsupportedConfiguration(
      "proxy_error_mc: no usable route to the diffusion coefficient "
      "(need its spectrum, values with a gradient, or a recovered spectrum)");
}

double proxy_error_mc_adr(const AdrSpectra& op, const SampledFunction& f,
                          const SparseSpectrum& u_approx,
                          std::size_t n_samples, std::uint64_t seed,
                          Exec exec) {
  const std::size_t d = u_approx.dim();
  if (f.dim != d || op.a.dim() != d)
    throw DimensionMismatch("proxy_error_mc_adr: dimension mismatch");
  if (n_samples == 0)
    throw Error("proxy_error_mc_adr: need at least one sample");
  const PointSet pts = uniform_points(d, n_samples, seed);
  return mc_from_operator_image(apply_operator_adr(op, u_approx), f, pts,
                                exec);
}

ReferenceErrors reference_errors(const SparseSpectrum& u,
                                 const SparseSpectrum& u_ref) {
  if (u.dim() != u_ref.dim())
    throw DimensionMismatch("reference_errors: dimension mismatch");
  const SparseSpectrum diff = spectrum_sub(u, u_ref);
  auto h1 = [](const SparseSpectrum& s) {
    double acc = 0;
    for (const auto& [k, v] : s.entries())
      acc += (1.0 + kTwoPi * kTwoPi * k.norm2_sq()) * std::norm(v);
    return std::sqrt(acc);
  };
  const double ref_l2 = spectrum_norms(u_ref).l2;
  const double ref_h1 = h1(u_ref);
  if (ref_l2 <= 0)
    throw Error("reference_errors: zero reference solution");
  return ReferenceErrors{spectrum_norms(diff).l2 / ref_l2, h1(diff) / ref_h1};
}

}  // namespace sparsespec
