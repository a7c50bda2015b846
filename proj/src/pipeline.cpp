#include "sparsespec/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string_view>

#include <fmt/core.h>

#include "sparsespec/errors.hpp"
#include "sparsespec/rng.hpp"
#include "sparsespec/sft.hpp"

namespace sparsespec {

namespace {

void validate_config(const SolverConfig& cfg, std::size_t dim) {
  if (dim == 0) throw Error("solve: zero-dimensional problem");
  if (cfg.K < 2 || cfg.K % 2 != 0)
    throw Error("solve: bandwidth K must be even and >= 2");
  if (cfg.s == 0) throw Error("solve: sparsity must be positive");
  if (cfg.N < 0) throw Error("solve: stamping level must be >= 0");
  if (!(cfg.sigma > 0.0) || cfg.sigma > 1.0)
    throw Error("solve: sigma must lie in (0, 1]");
}

struct StageTimer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double lap() {
    const auto t1 = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(t1 - t0).count();
    t0 = t1;
    return s;
  }
};

SftConfig stage_sft_config(const SolverConfig& cfg, std::size_t dim,
                           std::string_view tag) {
  return SftConfig{dim, cfg.K, cfg.s, cfg.sigma, derive_seed(cfg.seed, tag)};
}

// Removes the zero-frequency rhs entry (mean-zero convention) and records a
// warning with the dropped magnitude.
void drop_zero_mode(SparseSpectrum& f_hat, std::vector<std::string>& warnings) {
  const Frequency zero = Frequency::zero(f_hat.dim());
  const Complex f0 = f_hat.at(zero);
  if (f0 == Complex(0.0, 0.0)) return;
  f_hat.set(zero, Complex(0.0, 0.0));
  warnings.push_back(fmt::format(
      "dropped recovered zero-frequency rhs coefficient (|f_hat_0| = {:.3e}) "
      "under the mean-zero convention",
      std::abs(f0)));
}

// The l1 dominance test is a sufficient condition for verifiable coercivity,
// not a necessary one: multiscale fields with large contrast routinely fail
// it while staying strictly positive. Failing it therefore only degrades the
// run (warning, no decay-based bounds); the solve stays guarded by the
// factorization's condition estimate and residual check. A non-positive
// recovered mean is fatal: nothing suggests a diffusion coefficient then.
void check_ellipticity(const SparseSpectrum& a_hat_s,
                       std::vector<std::string>& warnings) {
  const EllipticityResult er = ellipticity_check(a_hat_s);
  if (er.ok) return;
  const double a0 = a_hat_s.at(Frequency::zero(a_hat_s.dim())).real();
  if (!(a0 > 0))
    throw EllipticityFailure(fmt::format(
        "recovered diffusion spectrum has non-positive mean ({:.3e})", a0));
  warnings.push_back(fmt::format(
      "recovered diffusion spectrum is not verifiably elliptic at this "
      "sparsity (a_min lower bound = {:.3e}); relying on the solver's "
      "conditioning and residual checks",
      er.a_min_lb));
}

constexpr const char* kZeroRhsWarning =
    "recovered rhs has no usable frequency content; returning the zero "
    "solution";

}  // namespace

EllipticityProfile make_ellipticity_profile(const SparseSpectrum& a_hat) {
  EllipticityProfile p;
  p.a0 = a_hat.at(Frequency::zero(a_hat.dim())).real();
  for (const auto& [k, v] : a_hat.entries())
    if (!k.is_zero()) p.deviation_l1 += std::abs(v);
  p.a_min_lb = p.a0 - p.deviation_l1;
  p.A = p.a_min_lb > 0 ? p.deviation_l1 / p.a_min_lb
                       : std::numeric_limits<double>::infinity();
  p.decay_hypothesis = 3.0 * p.deviation_l1 < p.a_min_lb;
  // base = A / (1 - 2A) = deviation / (a_min_lb - 2 deviation), < 1 exactly
  // under the hypothesis.
  p.decay_base = p.decay_hypothesis
                     ? p.deviation_l1 / (p.a_min_lb - 2.0 * p.deviation_l1)
                     : 0.0;
  return p;
}

double truncation_decay_bound(const EllipticityProfile& p, int N,
                              double f_l2) {
  if (!p.decay_hypothesis)
    throw UnsupportedConfiguration(
        "truncation_decay_bound: decay hypothesis 3 deviation < a_min fails");
  if (N < 0) throw Error("truncation_decay_bound: level must be >= 0");
  return std::pow(p.decay_base, N + 1) * f_l2 / p.a_min_lb;
}

double convergence_bound(const EllipticityProfile& p, int N,
                         double sft_f_err_l2, double sft_a_err_l1, double f_l2,
                         double a_l1) {
  if (N < 0) throw Error("convergence_bound: level must be >= 0");
  if (!(f_l2 > 0)) throw Error("convergence_bound: need a nonzero rhs norm");
  const double m = p.a_min_lb - sft_a_err_l1;
  if (!(3.0 * p.deviation_l1 < m))
    throw UnsupportedConfiguration(
        "convergence_bound: 3 deviation + sft_a_err < a_min fails");
  const double base = p.deviation_l1 / (m - 2.0 * p.deviation_l1);
  return (1.0 + a_l1 / m) * (f_l2 / m) *
         (sft_f_err_l2 / f_l2 + sft_a_err_l1 + std::pow(base, N + 1));
}

SolveReport sparse_spectral_solve(const SampledFunction& a,
                                  const SampledFunction& f,
                                  const SolverConfig& cfg) {
  DiffusionProblem p;
  p.a = a;
  p.f = f;
  return sparse_spectral_solve(p, cfg);
}

SolveReport sparse_spectral_solve(const DiffusionProblem& p,
                                  const SolverConfig& cfg) {
  const std::size_t d = p.a.dim;
  if (p.f.dim != d)
    throw DimensionMismatch("solve: coefficient/rhs dimension mismatch");
  validate_config(cfg, d);

  SolveReport rep;
  rep.seed = cfg.seed;
  StageTimer timer;

  const SparseSpectrum a_raw = sft(p.a, stage_sft_config(cfg, d, "sft:a"));
  SparseSpectrum f_used = sft(p.f, stage_sft_config(cfg, d, "sft:f"));
  rep.t_sft = timer.lap();

  rep.a_hat_s = symmetrize_real(a_raw);
  drop_zero_mode(f_used, rep.warnings);
  rep.f_hat_s = f_used;

  rep.profile = make_ellipticity_profile(rep.a_hat_s);
  check_ellipticity(rep.a_hat_s, rep.warnings);
  if (rep.profile.decay_hypothesis)
    rep.truncation_bound = truncation_decay_bound(
        rep.profile, cfg.N, spectrum_norms(f_used).l2);

  if (f_used.empty()) {
    rep.u_hat = SparseSpectrum(d);
    rep.warnings.push_back(kZeroRhsWarning);
    return rep;
  }

  timer.lap();
  const StampSet stamp = stamp_set(rep.a_hat_s.support(), f_used.support(),
                                   cfg.N, cfg.stamp_cap);
  rep.stamp_size = stamp.size();
  rep.t_stamp = timer.lap();

  GalerkinSystem sys = assemble(rep.a_hat_s, stamp);
  rep.t_assemble = timer.lap();
  rep.u_hat = galerkin_solve(sys, f_used);
  rep.t_solve = timer.lap();

  if (p.a_hat && p.f_hat)
    rep.proxy_error_exact =
        proxy_error_exact(*p.a_hat, rep.u_hat, *p.f_hat);
  if (cfg.mc_samples > 0) {
    DiffusionAccess access;
    access.exact_spectrum = p.a_hat;
    access.values = p.a;
    access.gradient = p.a_grad;
    access.recovered_spectrum = rep.a_hat_s;
    rep.proxy_error_mc =
        proxy_error_mc(access, p.f, rep.u_hat, cfg.mc_samples,
                       derive_seed(cfg.seed, "mc"));
  }
  return rep;
}

SolveReport sparse_spectral_solve_adr(const AdrProblem& p,
                                      const SolverConfig& cfg) {
  const std::size_t d = p.a.dim;
  if (p.b.size() != d)
    throw DimensionMismatch("solve: need one advection component per axis");
  for (const SampledFunction& bj : p.b)
    if (bj.dim != d)
      throw DimensionMismatch("solve: advection component dimension mismatch");
  if (p.c.dim != d || p.f.dim != d)
    throw DimensionMismatch("solve: operator/rhs dimension mismatch");
  validate_config(cfg, d);

  SolveReport rep;
  rep.seed = cfg.seed;
  StageTimer timer;

  const SparseSpectrum a_raw = sft(p.a, stage_sft_config(cfg, d, "sft:a"));
  std::vector<SparseSpectrum> b_s;
  b_s.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::string tag = fmt::format("sft:b{}", j + 1);
    b_s.push_back(
        symmetrize_real(sft(p.b[j], stage_sft_config(cfg, d, tag))));
  }
  const SparseSpectrum c_s =
      symmetrize_real(sft(p.c, stage_sft_config(cfg, d, "sft:c")));
  SparseSpectrum f_used = sft(p.f, stage_sft_config(cfg, d, "sft:f"));
  rep.t_sft = timer.lap();

  rep.a_hat_s = symmetrize_real(a_raw);
  const AdrSpectra op(rep.a_hat_s, b_s, c_s);

  // A nonzero reaction mean makes the zero row invertible, so the rhs mean
  // carries information; otherwise the mean-zero convention applies.
  const bool keep_zero =
      c_s.at(Frequency::zero(d)) != Complex(0.0, 0.0);
  if (!keep_zero) drop_zero_mode(f_used, rep.warnings);
  rep.f_hat_s = f_used;

  rep.profile = make_ellipticity_profile(rep.a_hat_s);
  check_ellipticity(rep.a_hat_s, rep.warnings);
  // The decay bound is only established for the pure diffusion operator.
  bool pure_diffusion = c_s.empty();
  for (const SparseSpectrum& bj : b_s) pure_diffusion &= bj.empty();
  if (pure_diffusion && rep.profile.decay_hypothesis)
    rep.truncation_bound = truncation_decay_bound(
        rep.profile, cfg.N, spectrum_norms(f_used).l2);

  if (f_used.empty()) {
    rep.u_hat = SparseSpectrum(d);
    rep.warnings.push_back(kZeroRhsWarning);
    return rep;
  }

  timer.lap();
  std::vector<std::vector<Frequency>> supports;
  supports.reserve(d + 2);
  supports.push_back(rep.a_hat_s.support());
  for (const SparseSpectrum& bj : b_s) supports.push_back(bj.support());
  supports.push_back(c_s.support());
  const StampSet stamp =
      stamp_set_adr(supports, f_used.support(), cfg.N, cfg.stamp_cap);
  rep.stamp_size = stamp.size();
  rep.t_stamp = timer.lap();

  GalerkinSystem sys = assemble_adr(op, stamp);
  rep.t_assemble = timer.lap();
  rep.u_hat = galerkin_solve(sys, f_used);
  rep.t_solve = timer.lap();

  if (p.spectra && p.f_hat)
    rep.proxy_error_exact =
        proxy_error_exact_adr(*p.spectra, rep.u_hat, *p.f_hat);
  if (cfg.mc_samples > 0) {
    const AdrSpectra& op_mc = p.spectra ? *p.spectra : op;
    rep.proxy_error_mc =
        proxy_error_mc_adr(op_mc, p.f, rep.u_hat, cfg.mc_samples,
                           derive_seed(cfg.seed, "mc"));
  }
  return rep;
}

}  // namespace sparsespec
