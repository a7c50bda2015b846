#pragma once

#include <cstdint>

#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

// Data-parallel kernels. Each has an OpenMP path (Exec::parallel, default)
// and a serial reference path; outputs are bit-identical because every output
// slot is written by exactly one iteration.

// g evaluated at every point of pts.
std::vector<Complex> sample_function(const SampledFunction& g,
                                     const PointSet& pts,
                                     Exec exec = Exec::parallel);

// Trig polynomial evaluated at every point of pts.
std::vector<Complex> evaluate_many(const SparseSpectrum& s,
                                   const PointSet& pts,
                                   Exec exec = Exec::parallel);

// Copy of pts with coordinate `coord` shifted by delta mod 1.
PointSet shift_points(const PointSet& pts, std::size_t coord, double delta);

// n uniform points on [0,1)^d from per-index splitmix64 streams: point i is a
// pure function of (seed, i), so results do not depend on thread count.
PointSet uniform_points(std::size_t dim, std::size_t n, std::uint64_t seed);

}  // namespace sparsespec
