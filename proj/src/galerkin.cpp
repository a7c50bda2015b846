#include "sparsespec/galerkin.hpp"

#include <cmath>
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <fmt/core.h>

namespace sparsespec {

namespace {

// One union-support point of the operator symbol with all its coefficients.
struct OpTerm {
  Frequency q;
  Complex a{0.0, 0.0};
  std::vector<Complex> b;  // per advection component
  Complex c{0.0, 0.0};
};

std::vector<OpTerm> collect_terms(const AdrSpectra& op) {
  const std::size_t d = op.a.dim();
  std::map<Frequency, OpTerm> terms;
  auto slot = [&](const Frequency& q) -> OpTerm& {
    auto [it, inserted] = terms.try_emplace(q);
    if (inserted) {
      it->second.q = q;
      it->second.b.assign(op.b.size(), Complex(0.0, 0.0));
    }
    return it->second;
  };
  for (const auto& [q, v] : op.a.entries()) slot(q).a = v;
  for (std::size_t j = 0; j < op.b.size(); ++j) {
    if (op.b[j].dim() != d)
      throw DimensionMismatch("assemble: advection spectrum dimension");
    for (const auto& [q, v] : op.b[j].entries()) slot(q).b[j] = v;
  }
  if (!op.c.empty() && op.c.dim() != d)
    throw DimensionMismatch("assemble: reaction spectrum dimension");
  for (const auto& [q, v] : op.c.entries()) slot(q).c = v;
  std::vector<OpTerm> out;
  out.reserve(terms.size());
  for (auto& [q, t] : terms) out.push_back(std::move(t));
  return out;
}

// Symbol entry for row k, column l with q = k - l.
Complex op_entry(const OpTerm& t, const Frequency& l, const Frequency& k) {
  Complex v = (kTwoPi * kTwoPi * static_cast<double>(l.dot(k))) * t.a;
  if (!t.b.empty()) {
    Complex adv(0.0, 0.0);
    for (std::size_t j = 0; j < t.b.size(); ++j)
      adv += static_cast<double>(l.k[j]) * t.b[j];
    v += Complex(0.0, kTwoPi) * adv;
  }
  v += t.c;
  return v;
}

GalerkinSystem assemble_impl(AdrSpectra op, const StampSet& stamp, Exec exec) {
  const std::size_t d = op.a.dim();
  if (stamp.dim() != d)
    throw DimensionMismatch("assemble: stamp dimension mismatch");
  if (!op.b.empty() && op.b.size() != d)
    throw DimensionMismatch("assemble: need one advection spectrum per axis");
  const Frequency zero = Frequency::zero(d);
  const bool keep_zero = op.c.at(zero) != Complex(0.0, 0.0);

  GalerkinSystem sys{{}, {}, {}, std::move(op)};
  sys.index.reserve(stamp.size());
  for (const auto& [k, lvl] : stamp.levels())
    if (keep_zero || !k.is_zero()) sys.index.push_back(k);
  if (sys.index.empty())
    throw Error("assemble: empty index after zero-frequency removal");
  sys.pos.reserve(2 * sys.index.size());
  for (std::size_t i = 0; i < sys.index.size(); ++i)
    sys.pos.emplace(sys.index[i], i);

  const std::vector<OpTerm> terms = collect_terms(sys.source);
  const std::int64_t n = static_cast<std::int64_t>(sys.index.size());
  sys.matrix = Eigen::MatrixXcd::Zero(n, n);

  // Rows are independent: row k walks the union support and writes column
  // l = k - q when l is in the index.
  auto fill_row = [&](std::int64_t r) {
    const Frequency& k = sys.index[r];
    for (const OpTerm& t : terms) {
      Frequency l = k.checked_sub(t.q);
      auto it = sys.pos.find(l);
      if (it == sys.pos.end()) continue;
      sys.matrix(r, static_cast<std::int64_t>(it->second)) = op_entry(t, l, k);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) fill_row(r);
  } else {
    for (std::int64_t r = 0; r < n; ++r) fill_row(r);
  }
  return sys;
}

}  // namespace

GalerkinSystem assemble(const SparseSpectrum& a_hat, const StampSet& stamp,
                        Exec exec) {
  if (!a_hat.contains(Frequency::zero(a_hat.dim())))
    throw Error("assemble: diffusion spectrum needs a zero-frequency entry");
  return assemble_impl(AdrSpectra(a_hat), stamp, exec);
}

GalerkinSystem assemble_adr(const AdrSpectra& op, const StampSet& stamp,
                            Exec exec) {
  return assemble_impl(op, stamp, exec);
}

GalerkinSystem assemble_reference(const SparseSpectrum& a_hat,
                                  const StampSet& stamp) {
  if (!a_hat.contains(Frequency::zero(a_hat.dim())))
    throw Error("assemble: diffusion spectrum needs a zero-frequency entry");
  GalerkinSystem sys{{}, {}, {}, AdrSpectra(a_hat)};
  for (const auto& [k, lvl] : stamp.levels())
    if (!k.is_zero()) sys.index.push_back(k);
  if (sys.index.empty())
    throw Error("assemble: empty index after zero-frequency removal");
  for (std::size_t i = 0; i < sys.index.size(); ++i)
    sys.pos.emplace(sys.index[i], i);
  const std::int64_t n = static_cast<std::int64_t>(sys.index.size());
  sys.matrix.resize(n, n);
  // Direct pairwise fill, O(n^2) lookups. Same arithmetic expression as the
  // row kernel, so results agree bit for bit.
  for (std::int64_t r = 0; r < n; ++r) {
    const Frequency& k = sys.index[r];
    for (std::int64_t c = 0; c < n; ++c) {
      const Frequency& l = sys.index[c];
      const Complex aq = a_hat.at(k.checked_sub(l));
      sys.matrix(r, c) = (kTwoPi * kTwoPi * static_cast<double>(l.dot(k))) * aq;
    }
  }
  return sys;
}

namespace {

// A * u through the symbol formula; the matrix itself may already hold LU
// factors, so this never reads sys.matrix.
Eigen::VectorXcd apply_system(const GalerkinSystem& sys,
                              const Eigen::VectorXcd& u) {
  const std::vector<OpTerm> terms = collect_terms(sys.source);
  const std::int64_t n = static_cast<std::int64_t>(sys.index.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    const Frequency& k = sys.index[r];
    Complex acc(0.0, 0.0);
    for (const OpTerm& t : terms) {
      Frequency l = k.checked_sub(t.q);
      auto it = sys.pos.find(l);
      if (it == sys.pos.end()) continue;
      acc += op_entry(t, l, k) * u[static_cast<std::int64_t>(it->second)];
    }
    out[r] = acc;
  }
  return out;
}

}  // namespace

SparseSpectrum galerkin_solve(GalerkinSystem& sys, const SparseSpectrum& f_hat,
                              SolveStats* stats) {
  const std::int64_t n = static_cast<std::int64_t>(sys.index.size());
  if (n == 0) throw Error("galerkin_solve: empty system");
  if (f_hat.dim() != sys.index[0].dim())
    throw DimensionMismatch("galerkin_solve: rhs dimension mismatch");

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  const Frequency zero = Frequency::zero(f_hat.dim());
  for (const auto& [k, v] : f_hat.entries()) {
    auto it = sys.pos.find(k);
    if (it == sys.pos.end()) {
      if (k == zero) continue;  // mean-zero convention dropped the zero row
      throw DimensionMismatch("galerkin_solve: rhs entry outside the solve index");
    }
    rhs[static_cast<std::int64_t>(it->second)] = v;
  }
  const double f_norm = rhs.norm();

  const double anorm = sys.matrix.cwiseAbs().colwise().sum().maxCoeff();

  std::vector<lapack_int> ipiv(n);
  lapack_int info = LAPACKE_zgetrf(
      LAPACK_COL_MAJOR, static_cast<lapack_int>(n), static_cast<lapack_int>(n),
      sys.matrix.data(), static_cast<lapack_int>(n), ipiv.data());
  if (info != 0)
    throw SolverFailure(fmt::format("zgetrf failed (info={})", info));

  double rcond = 0;
  info = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', static_cast<lapack_int>(n),
                        sys.matrix.data(), static_cast<lapack_int>(n), anorm,
                        &rcond);
  if (info != 0)
    throw SolverFailure(fmt::format("zgecon failed (info={})", info));
  const double cond = rcond > 0 ? 1.0 / rcond : INFINITY;
  if (cond > 1e14)
    throw SolverFailure(
        fmt::format("condition estimate {:.3e} above 1e14", cond));

  Eigen::VectorXcd u = rhs;
  info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n), 1,
                        sys.matrix.data(), static_cast<lapack_int>(n),
                        ipiv.data(), u.data(), static_cast<lapack_int>(n));
  if (info != 0)
    throw SolverFailure(fmt::format("zgetrs failed (info={})", info));

  double residual_rel = 0;
  if (f_norm > 0) {
    residual_rel = (apply_system(sys, u) - rhs).norm() / f_norm;
    if (!(residual_rel <= 1e-10))
      throw SolverFailure(fmt::format(
          "solve residual {:.3e} above 1e-10 relative", residual_rel));
  }
  if (stats != nullptr) {
    stats->condition_estimate = cond;
    stats->residual_rel = residual_rel;
  }

  SparseSpectrum out(sys.index[0].dim());
  for (std::int64_t i = 0; i < n; ++i) out.set(sys.index[i], u[i]);
  return out;
}

SparseSpectrum apply_operator(const SparseSpectrum& a_hat,
                              const SparseSpectrum& u_hat) {
  return apply_operator_adr(AdrSpectra(a_hat), u_hat);
}

SparseSpectrum apply_operator_adr(const AdrSpectra& op,
                                  const SparseSpectrum& u_hat) {
  if (u_hat.dim() != op.a.dim())
    throw DimensionMismatch("apply_operator: dimension mismatch");
  const std::vector<OpTerm> terms = collect_terms(op);
  SparseSpectrum out(u_hat.dim());
  // Exact convolution: k = l + q over all (l, q) pairs.
  for (const auto& [l, ul] : u_hat.entries()) {
    for (const OpTerm& t : terms) {
      Frequency k = l.checked_add(t.q);
      const Complex v = op_entry(t, l, k);
      if (v != Complex(0.0, 0.0)) out.add(std::move(k), v * ul);
    }
  }
  return out;
}

EllipticityResult ellipticity_check(const SparseSpectrum& a_hat) {
  const Frequency zero = Frequency::zero(a_hat.dim());
  const double a0 = std::abs(a_hat.at(zero));
  double dev = 0;
  for (const auto& [k, v] : a_hat.entries())
    if (!k.is_zero()) dev += std::abs(v);
  return EllipticityResult{dev < a0, a0 - dev};
}

}  // namespace sparsespec
