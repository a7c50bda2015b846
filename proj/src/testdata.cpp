#include "sparsespec/testdata.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include <fmt/core.h>

namespace sparsespec {

namespace {

double dot_fx(const std::vector<std::int64_t>& k, std::span<const double> x) {
  double t = 0;
  for (std::size_t j = 0; j < k.size(); ++j)
    t += static_cast<double>(k[j]) * x[j];
  return t;
}

Frequency draw_freq(std::size_t d, std::int64_t lo, std::int64_t hi, Rng& rng,
                    bool nonzero) {
  for (;;) {
    std::vector<std::int64_t> comps(d);
    for (std::size_t j = 0; j < d; ++j) comps[j] = rng.range_int(lo, hi);
    Frequency k(std::move(comps));
    if (!nonzero || !k.is_zero()) return k;
  }
}

Frequency draw_cube_freq(std::size_t d, std::uint64_t K, Rng& rng) {
  // Callers place drawn frequencies in conjugate pairs {k, -k}, so the range
  // must be closed under negation: K/2 would negate to -K/2, off the grid.
  const std::int64_t hi = static_cast<std::int64_t>(K / 2) - 1;
  return draw_freq(d, -hi, hi, rng, /*nonzero=*/true);
}

// f_hat of sin(2 pi k_f . x): 1/(2i) at k_f, -1/(2i) at -k_f.
SparseSpectrum sine_rhs_spectrum(const Frequency& k_f) {
  SparseSpectrum f_hat(k_f.dim());
  f_hat.set(k_f, Complex(0.0, -0.5));
  f_hat.set(k_f.negated(), Complex(0.0, 0.5));
  return f_hat;
}

SampledFunction sine_rhs_function(const Frequency& k_f) {
  const std::size_t d = k_f.dim();
  auto comps = k_f.k;
  return SampledFunction{
      d, [comps](std::span<const double> x) {
        return Complex(std::sin(kTwoPi * dot_fx(comps, x)), 0.0);
      }};
}

// Low-discrepancy Kronecker points for positivity spot checks (no Rng draws).
bool positive_on_kronecker_points(const SampledFunction& g, std::size_t n) {
  static const double kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                   23, 29, 31, 37, 41, 43, 47, 53};
  const std::size_t d = g.dim;
  if (d > std::size(kPrimes))
    throw Error("positivity check supports at most 16 dimensions");
  std::vector<double> alpha(d), x(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double s = std::sqrt(kPrimes[j]);
    alpha[j] = s - std::floor(s);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double t = static_cast<double>(i) * alpha[j];
      x[j] = t - std::floor(t);
    }
    if (g.eval(x).real() <= 0) return false;
  }
  return true;
}

DiffusionProblem build_sparse_diffusion(const Frequency& k_a,
                                        const Frequency& k_f, double c_a) {
  const std::size_t d = k_a.dim();
  SparseSpectrum a_hat(d);
  a_hat.set(Frequency::zero(d), Complex(4.0, 0.0));
  a_hat.set(k_a, Complex(c_a / 2.0, 0.0));
  a_hat.set(k_a.negated(), Complex(c_a / 2.0, 0.0));

  DiffusionProblem p;
  const auto ka = k_a.k;
  p.a = SampledFunction{d, [ka, c_a](std::span<const double> x) {
                          return Complex(
                              4.0 + c_a * std::cos(kTwoPi * dot_fx(ka, x)),
                              0.0);
                        }};
  p.f = sine_rhs_function(k_f);
  p.a_hat = std::move(a_hat);
  p.f_hat = sine_rhs_spectrum(k_f);
  p.a_grad = [ka, c_a, d](std::span<const double> x) {
    const double s = std::sin(kTwoPi * dot_fx(ka, x));
    std::vector<double> g(d);
    for (std::size_t j = 0; j < d; ++j)
      g[j] = -c_a * kTwoPi * static_cast<double>(ka[j]) * s;
    return g;
  };
  return p;
}

DiffusionProblem build_high_sparsity(const std::vector<Frequency>& ks,
                                     const Frequency& k_f,
                                     std::span<const double> c, double a0) {
  const std::size_t d = k_f.dim();
  SparseSpectrum a_hat(d);
  a_hat.set(Frequency::zero(d), Complex(a0, 0.0));
  for (std::size_t j = 0; j < ks.size(); ++j) {
    a_hat.add(ks[j], Complex(c[j] / 2.0, 0.0));
    a_hat.add(ks[j].negated(), Complex(c[j] / 2.0, 0.0));
  }

  std::vector<std::vector<std::int64_t>> kk(ks.size());
  for (std::size_t j = 0; j < ks.size(); ++j) kk[j] = ks[j].k;
  const std::vector<double> cv(c.begin(), c.end());
  DiffusionProblem p;
  p.a = SampledFunction{d, [kk, cv, a0](std::span<const double> x) {
                          double v = a0;
                          for (std::size_t j = 0; j < kk.size(); ++j)
                            v += cv[j] * std::cos(kTwoPi * dot_fx(kk[j], x));
                          return Complex(v, 0.0);
                        }};
  p.f = sine_rhs_function(k_f);
  p.a_hat = std::move(a_hat);
  p.f_hat = sine_rhs_spectrum(k_f);
  p.a_grad = [kk, cv, d](std::span<const double> x) {
    std::vector<double> g(d, 0.0);
    for (std::size_t j = 0; j < kk.size(); ++j) {
      const double s = -cv[j] * kTwoPi * std::sin(kTwoPi * dot_fx(kk[j], x));
      for (std::size_t i = 0; i < d; ++i)
        g[i] += s * static_cast<double>(kk[j][i]);
    }
    return g;
  };
  return p;
}

std::vector<Frequency> draw_distinct_pairs(std::size_t d, std::uint64_t K,
                                           std::size_t n_pairs, Rng& rng) {
  // Distinct up to sign: cos(2 pi k.x) == cos(-2 pi k.x).
  std::vector<Frequency> ks;
  std::set<Frequency> used;
  while (ks.size() < n_pairs) {
    Frequency k = draw_cube_freq(d, K, rng);
    if (used.count(k) || used.count(k.negated())) continue;
    used.insert(k);
    ks.push_back(std::move(k));
  }
  return ks;
}

DiffusionProblem build_gaussian(const std::vector<Frequency>& ks,
                                const Frequency& k_f,
                                std::span<const double> c, double c0,
                                double r) {
  const std::size_t d = k_f.dim();
  const std::size_t n_terms = ks.size();
  std::vector<std::vector<std::int64_t>> kk(n_terms);
  for (std::size_t j = 0; j < n_terms; ++j) kk[j] = ks[j].k;
  const std::vector<double> cv(c.begin(), c.end());

  DiffusionProblem p;
  p.a = SampledFunction{d, [kk, cv, c0, r, d](std::span<const double> x) {
                          std::vector<double> g1(d);
                          for (std::size_t i = 0; i < d; ++i)
                            g1[i] = periodized_gaussian_1d(r, x[i]);
                          double v = c0;
                          for (std::size_t j = 0; j < kk.size(); ++j) {
                            double prod =
                                cv[j] * std::cos(kTwoPi * dot_fx(kk[j], x));
                            for (std::size_t i = 0; i < d; ++i) prod *= g1[i];
                            v += prod;
                          }
                          return Complex(v, 0.0);
                        }};
  p.f = sine_rhs_function(k_f);
  p.f_hat = sine_rhs_spectrum(k_f);
  p.a_grad = [kk, cv, r, d](std::span<const double> x) {
    std::vector<double> g1(d), dg1(d);
    for (std::size_t i = 0; i < d; ++i) {
      g1[i] = periodized_gaussian_1d(r, x[i]);
      dg1[i] = periodized_gaussian_1d_deriv(r, x[i]);
    }
    std::vector<double> g(d, 0.0);
    for (std::size_t j = 0; j < kk.size(); ++j) {
      const double ph = kTwoPi * dot_fx(kk[j], x);
      const double cs = std::cos(ph), sn = std::sin(ph);
      double all = 1.0;
      for (std::size_t i = 0; i < d; ++i) all *= g1[i];
      for (std::size_t i = 0; i < d; ++i) {
        const double rest = g1[i] != 0.0 ? all / g1[i] : 0.0;
        g[i] += cv[j] * (-kTwoPi * static_cast<double>(kk[j][i]) * sn * all +
                         cs * dg1[i] * rest);
      }
    }
    return g;
  };

  if (d <= 2) {
    // Exact spectrum: Re G_{r,k} has weight e^{-r^2 ||m - k||^2 / 2} at m,
    // symmetrized over +-k. Window chosen so dropped mass is below 1e-15.
    const std::int64_t w =
        static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * 35.0) / r)) + 1;
    SparseSpectrum a_hat(d);
    a_hat.add(Frequency::zero(d), Complex(c0, 0.0));
    for (std::size_t j = 0; j < n_terms; ++j) {
      for (int sign : {+1, -1}) {
        std::vector<std::int64_t> base = ks[j].k;
        for (auto& v : base) v *= sign;
        std::vector<std::int64_t> off(d, -w);
        for (;;) {
          std::vector<std::int64_t> m(d);
          double q = 0;
          for (std::size_t i = 0; i < d; ++i) {
            m[i] = base[i] + off[i];
            q += static_cast<double>(off[i]) * static_cast<double>(off[i]);
          }
          const double wgt = std::exp(-r * r * q / 2.0);
          if (wgt > 1e-16)
            a_hat.add(Frequency(std::move(m)),
                      Complex(cv[j] * wgt / 2.0, 0.0));
          std::size_t i = d;
          for (; i-- > 0;) {
            if (++off[i] <= w) break;
            off[i] = -w;
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
      }
    }
    SparseSpectrum filtered(d);
    for (const auto& [k, v] : a_hat.entries())
      if (std::abs(v) > 1e-15) filtered.set(k, v);
    p.a_hat = std::move(filtered);
  }
  return p;
}

}  // namespace

DiffusionProblem daubechies_1d() {
  auto a_eval = [](std::span<const double> xs) {
    const double x = xs[0];
    const double u = 0.6 + 0.2 * std::cos(kTwoPi * x);
    const double v = 1.0 + 0.7 * std::sin(256.0 * M_PI * x);
    return Complex(0.1 * std::exp(u / v), 0.0);
  };
  // Grid average of exp(-cos(2 pi x)); the trapezoid rule collapses to it on
  // a periodic grid.
  const std::size_t n = std::size_t{1} << 14;
  double mean = 0;
  for (std::size_t j = 0; j < n; ++j)
    mean += std::exp(-std::cos(kTwoPi * static_cast<double>(j) /
                               static_cast<double>(n)));
  mean /= static_cast<double>(n);

  DiffusionProblem p;
  p.a = SampledFunction{1, a_eval};
  p.f = SampledFunction{1, [mean](std::span<const double> xs) {
                          return Complex(
                              std::exp(-std::cos(kTwoPi * xs[0])) - mean, 0.0);
                        }};
  p.a_grad = [a_eval](std::span<const double> xs) {
    const double x = xs[0];
    const double u = 0.6 + 0.2 * std::cos(kTwoPi * x);
    const double du = -0.2 * kTwoPi * std::sin(kTwoPi * x);
    const double v = 1.0 + 0.7 * std::sin(256.0 * M_PI * x);
    const double dv = 0.7 * 256.0 * M_PI * std::cos(256.0 * M_PI * x);
    const double a = a_eval(xs).real();
    return std::vector<double>{a * (du * v - u * dv) / (v * v)};
  };
  return p;
}

DiffusionProblem sparse_diffusion_problem(std::size_t d, std::uint64_t K,
                                          Rng& rng) {
  if (d == 0 || K < 4 || K % 2 != 0)
    throw Error("sparse_diffusion_problem: need d >= 1 and even K >= 4");
  const Frequency k_a = draw_cube_freq(d, K, rng);
  const Frequency k_f = draw_cube_freq(d, K, rng);
  const double c_a = rng.uniform(-1.0, 1.0);
  return build_sparse_diffusion(k_a, k_f, c_a);
}

DiffusionProblem sparse_diffusion_problem(std::size_t d, std::uint64_t K,
                                          double c_a, Rng& rng) {
  if (d == 0 || K < 4 || K % 2 != 0)
    throw Error("sparse_diffusion_problem: need d >= 1 and even K >= 4");
  if (!(std::abs(c_a) < 4.0))
    throw EllipticityFailure("sparse_diffusion_problem: |c_a| must be < 4");
  const Frequency k_a = draw_cube_freq(d, K, rng);
  const Frequency k_f = draw_cube_freq(d, K, rng);
  return build_sparse_diffusion(k_a, k_f, c_a);
}

DiffusionProblem high_sparsity_diffusion(std::size_t d, std::uint64_t K,
                                         std::size_t n_pairs, Rng& rng) {
  if (d == 0 || K < 4 || K % 2 != 0 || n_pairs == 0)
    throw Error("high_sparsity_diffusion: bad parameters");
  for (int attempt = 0; attempt < 10; ++attempt) {
    const std::vector<Frequency> ks = draw_distinct_pairs(d, K, n_pairs, rng);
    const Frequency k_f = draw_cube_freq(d, K, rng);
    std::vector<double> c(n_pairs);
    double norm2 = 0, dev = 0;
    for (std::size_t j = 0; j < n_pairs; ++j) {
      c[j] = rng.uniform(-1.0, 1.0);
      norm2 += c[j] * c[j];
      dev += std::abs(c[j]);
    }
    const double a0 = 4.0 * std::ceil(std::sqrt(norm2));
    if (!(dev < a0)) continue;
    return build_high_sparsity(ks, k_f, c, a0);
  }
  throw EllipticityFailure(
      "high_sparsity_diffusion: no elliptic draw in 10 attempts");
}

DiffusionProblem high_sparsity_diffusion(std::size_t d, std::uint64_t K,
                                         std::span<const double> c, Rng& rng) {
  if (d == 0 || K < 4 || K % 2 != 0 || c.empty())
    throw Error("high_sparsity_diffusion: bad parameters");
  double norm2 = 0, dev = 0;
  for (double cj : c) {
    norm2 += cj * cj;
    dev += std::abs(cj);
  }
  const double a0 = 4.0 * std::ceil(std::sqrt(norm2));
  if (!(dev < a0))
    throw EllipticityFailure(
        "high_sparsity_diffusion: fixed coefficients are not elliptic");
  const std::vector<Frequency> ks = draw_distinct_pairs(d, K, c.size(), rng);
  const Frequency k_f = draw_cube_freq(d, K, rng);
  return build_high_sparsity(ks, k_f, c, a0);
}

double periodized_gaussian_1d(double r, double x) {
  double v = 0;
  for (int m = -10; m <= 10; ++m) {
    const double t = kTwoPi * (x - static_cast<double>(m));
    v += std::exp(-t * t / (2.0 * r * r));
  }
  return std::sqrt(kTwoPi) / r * v;
}

double periodized_gaussian_1d_deriv(double r, double x) {
  double v = 0;
  for (int m = -10; m <= 10; ++m) {
    const double u = x - static_cast<double>(m);
    const double t = kTwoPi * u;
    v += std::exp(-t * t / (2.0 * r * r)) *
         (-kTwoPi * kTwoPi * u / (r * r));
  }
  return std::sqrt(kTwoPi) / r * v;
}

Complex periodized_gaussian(double r, const Frequency& k,
                            std::span<const double> x) {
  if (k.dim() != x.size())
    throw DimensionMismatch("periodized_gaussian: dimension mismatch");
  double mag = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    mag *= periodized_gaussian_1d(r, x[j]);
  const double phase = kTwoPi * dot_fx(k.k, x);
  return mag * Complex(std::cos(phase), std::sin(phase));
}

DiffusionProblem gaussian_series_problem(std::size_t d, std::size_t n_terms,
                                         double r, std::int64_t box_lo,
                                         std::int64_t box_hi, double c0_factor,
                                         Rng& rng) {
  if (d == 0 || n_terms == 0 || !(r > 0) || box_lo > box_hi ||
      !(c0_factor > 0))
    throw Error("gaussian_series_problem: bad parameters");
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Frequency> ks;
    ks.reserve(n_terms);
    for (std::size_t j = 0; j < n_terms; ++j)
      ks.push_back(draw_freq(d, box_lo, box_hi, rng, /*nonzero=*/false));
    std::vector<double> c(n_terms);
    double norm2 = 0;
    for (std::size_t j = 0; j < n_terms; ++j) {
      c[j] = rng.uniform(-1.0, 1.0);
      norm2 += c[j] * c[j];
    }
    const Frequency k_f = draw_freq(d, box_lo, box_hi, rng, /*nonzero=*/true);
    const double c0 = c0_factor * std::ceil(std::sqrt(norm2));
    DiffusionProblem p = build_gaussian(ks, k_f, c, c0, r);
    if (positive_on_kronecker_points(p.a, 10000)) return p;
  }
  throw EllipticityFailure(
      "gaussian_series_problem: no positive field in 10 attempts");
}

DiffusionProblem gaussian_series_problem(std::size_t d, double r,
                                         std::int64_t box_lo,
                                         std::int64_t box_hi, double c0_factor,
                                         std::span<const double> c, Rng& rng) {
  if (d == 0 || c.empty() || !(r > 0) || box_lo > box_hi || !(c0_factor > 0))
    throw Error("gaussian_series_problem: bad parameters");
  double norm2 = 0;
  for (double cj : c) norm2 += cj * cj;
  const double c0 = c0_factor * std::ceil(std::sqrt(norm2));
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Frequency> ks;
    ks.reserve(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
      ks.push_back(draw_freq(d, box_lo, box_hi, rng, /*nonzero=*/false));
    const Frequency k_f = draw_freq(d, box_lo, box_hi, rng, /*nonzero=*/true);
    DiffusionProblem p = build_gaussian(ks, k_f, c, c0, r);
    if (positive_on_kronecker_points(p.a, 10000)) return p;
  }
  throw EllipticityFailure(
      "gaussian_series_problem: no positive field in 10 attempts");
}

AdrProblem adr_problem(std::uint64_t K, Rng& rng) {
  if (K < 100 || K % 2 != 0)
    throw Error("adr_problem: need even K >= 100 to hold the frequency box");
  const std::size_t d = 3;
  // Symmetric so that both halves of each sin/cos pair stay on the grid.
  const std::int64_t lo = -49, hi = 49;

  struct TrigField {
    std::vector<std::vector<std::int64_t>> sin_k, cos_k;
    std::vector<double> sin_c, cos_c;
    double mean = 0;

    Complex eval(std::span<const double> x) const {
      double v = mean;
      for (std::size_t j = 0; j < sin_k.size(); ++j)
        v += sin_c[j] * std::sin(kTwoPi * dot_fx(sin_k[j], x));
      for (std::size_t j = 0; j < cos_k.size(); ++j)
        v += cos_c[j] * std::cos(kTwoPi * dot_fx(cos_k[j], x));
      return Complex(v, 0.0);
    }
    SparseSpectrum spectrum(std::size_t dim) const {
      SparseSpectrum s(dim);
      if (mean != 0) s.add(Frequency::zero(dim), Complex(mean, 0.0));
      for (std::size_t j = 0; j < sin_k.size(); ++j) {
        Frequency k{sin_k[j]};
        s.add(k, Complex(0.0, -sin_c[j] / 2.0));
        s.add(k.negated(), Complex(0.0, sin_c[j] / 2.0));
      }
      for (std::size_t j = 0; j < cos_k.size(); ++j) {
        Frequency k{cos_k[j]};
        s.add(k, Complex(cos_c[j] / 2.0, 0.0));
        s.add(k.negated(), Complex(cos_c[j] / 2.0, 0.0));
      }
      return s;
    }
  };

  // Freqs first (sine then cosine), then coeffs in the same order.
  auto draw_field = [&](std::size_t n_sin, std::size_t n_cos, double c_lo,
                        double c_hi) {
    TrigField fld;
    for (std::size_t j = 0; j < n_sin; ++j)
      fld.sin_k.push_back(draw_freq(d, lo, hi, rng, /*nonzero=*/true).k);
    for (std::size_t j = 0; j < n_cos; ++j)
      fld.cos_k.push_back(draw_freq(d, lo, hi, rng, /*nonzero=*/true).k);
    for (std::size_t j = 0; j < n_sin; ++j)
      fld.sin_c.push_back(rng.uniform(c_lo, c_hi));
    for (std::size_t j = 0; j < n_cos; ++j)
      fld.cos_c.push_back(rng.uniform(c_lo, c_hi));
    return fld;
  };
  auto coeff_norm = [](const TrigField& fld) {
    double n2 = 0;
    for (double v : fld.sin_c) n2 += v * v;
    for (double v : fld.cos_c) n2 += v * v;
    return std::sqrt(n2);
  };

  TrigField a_f = draw_field(2, 2, -1.0, 1.0);
  a_f.mean = 4.0 * std::ceil(coeff_norm(a_f));
  std::vector<TrigField> b_f;
  for (std::size_t j = 0; j < d; ++j)
    b_f.push_back(draw_field(5, 5, 0.0, 1.0));
  TrigField c_f = draw_field(5, 5, 0.0, 1.0);
  c_f.mean = 4.0 * std::ceil(coeff_norm(c_f));
  TrigField f_f = draw_field(2, 3, -1.0, 1.0);

  auto to_fn = [d](const TrigField& fld) {
    return SampledFunction{
        d, [fld](std::span<const double> x) { return fld.eval(x); }};
  };

  AdrProblem p;
  p.a = to_fn(a_f);
  for (std::size_t j = 0; j < d; ++j) p.b.push_back(to_fn(b_f[j]));
  p.c = to_fn(c_f);
  p.f = to_fn(f_f);
  std::vector<SparseSpectrum> b_hat;
  for (std::size_t j = 0; j < d; ++j) b_hat.push_back(b_f[j].spectrum(d));
  p.spectra = AdrSpectra(a_f.spectrum(d), std::move(b_hat), c_f.spectrum(d));
  p.f_hat = f_f.spectrum(d);
  return p;
}

}  // namespace sparsespec
