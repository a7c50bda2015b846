#include "sparsespec/kernels.hpp"

#include <cmath>

#include "sparsespec/rng.hpp"

namespace sparsespec {

std::vector<Complex> sample_function(const SampledFunction& g,
                                     const PointSet& pts, Exec exec) {
  if (g.dim != pts.dim)
    throw DimensionMismatch("sample_function: point dimension mismatch");
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  std::vector<Complex> out(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = g.eval(pts[i]);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = g.eval(pts[i]);
  }
  return out;
}

std::vector<Complex> evaluate_many(const SparseSpectrum& s, const PointSet& pts,
                                   Exec exec) {
  if (s.dim() != pts.dim)
    throw DimensionMismatch("evaluate_many: point dimension mismatch");
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  std::vector<Complex> out(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = evaluate_trig_poly(s, pts[i]);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = evaluate_trig_poly(s, pts[i]);
  }
  return out;
}

PointSet shift_points(const PointSet& pts, std::size_t coord, double delta) {
  if (coord >= pts.dim)
    throw DimensionMismatch("shift_points: coordinate out of range");
  PointSet out = pts;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    double& x = out.coords[i * out.dim + coord];
    x += delta;
    x -= std::floor(x);  // wrap to [0, 1)
  }
  return out;
}

PointSet uniform_points(std::size_t dim, std::size_t n, std::uint64_t seed) {
  PointSet out;
  out.dim = dim;
  out.coords.resize(dim * n);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    // Stream for point i depends only on (seed, i): thread-count invariant.
    std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
    for (std::size_t j = 0; j < dim; ++j)
      out.coords[i * dim + j] =
          static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  }
  return out;
}

}  // namespace sparsespec
