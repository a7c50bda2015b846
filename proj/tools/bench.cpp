// Timing harness for the OpenMP kernels against their serial reference
// paths, plus row-parallel assembly against the O(n^2) direct reference.
// Also asserts bit-identical outputs, which is the contract that keeps the
// serial paths testable stand-ins.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>

#include <fmt/core.h>

#include "sparsespec/galerkin.hpp"
#include "sparsespec/kernels.hpp"
#include "sparsespec/rng.hpp"
#include "sparsespec/stamping.hpp"
#include "sparsespec/testdata.hpp"

namespace ss = sparsespec;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (dt < best) best = dt;
  }
  return best;
}

bool same_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

void report(const std::string& name, double serial_s, double parallel_s,
            bool equal) {
  fmt::print("{:<28} serial {:>9.2f} ms   parallel {:>9.2f} ms   x{:<5.2f} {}\n",
             name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
             equal ? "identical" : "MISMATCH");
  if (!equal) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  ss::Rng rng(1);

  const std::size_t d = 4;
  const ss::DiffusionProblem prob = ss::high_sparsity_diffusion(d, 1000, 25, rng);
  const ss::PointSet pts = ss::uniform_points(d, 1 << 17, 7);

  std::vector<ss::Complex> ser, par;
  double ts = time_best_of(reps, [&] { ser = ss::sample_function(prob.a, pts, ss::Exec::serial); });
  double tp = time_best_of(reps, [&] { par = ss::sample_function(prob.a, pts, ss::Exec::parallel); });
  report("sample_function (25 terms)", ts, tp, ser == par);

  const ss::SparseSpectrum& a_hat = *prob.a_hat;
  ts = time_best_of(reps, [&] { ser = ss::evaluate_many(a_hat, pts, ss::Exec::serial); });
  tp = time_best_of(reps, [&] { par = ss::evaluate_many(a_hat, pts, ss::Exec::parallel); });
  report("evaluate_many (51 modes)", ts, tp, ser == par);

  const ss::StampSet stamp = ss::stamp_set(a_hat.support(), prob.f_hat->support(), 2);
  fmt::print("assembly index: {} frequencies\n", stamp.size());
  std::optional<ss::GalerkinSystem> sys_ser, sys_par, sys_ref;
  ts = time_best_of(reps, [&] { sys_ser = ss::assemble(a_hat, stamp, ss::Exec::serial); });
  tp = time_best_of(reps, [&] { sys_par = ss::assemble(a_hat, stamp, ss::Exec::parallel); });
  report("assemble (row walk)", ts, tp, same_matrix(sys_ser->matrix, sys_par->matrix));

  const double tr = time_best_of(reps, [&] { sys_ref = ss::assemble_reference(a_hat, stamp); });
  report("assemble vs dense ref", tr, tp, same_matrix(sys_ref->matrix, sys_par->matrix));
  return 0;
}
