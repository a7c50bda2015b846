#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsespec/pipeline.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/stamping.hpp"

namespace sparsespec {

// Text formats. Floating point is written with 17 significant digits so
// values round-trip exactly and reruns are byte-identical.

// Spectrum CSV: header k_1,...,k_d,re,im; rows in lexicographic frequency
// order.
void write_spectrum_csv(std::ostream& out, const SparseSpectrum& s);
std::string spectrum_to_csv(const SparseSpectrum& s);
SparseSpectrum read_spectrum_csv(std::istream& in);

// Stamp CSV: header k_1,...,k_d,level; rows in lexicographic order.
void write_stamp_csv(std::ostream& out, const StampSet& s);

// Solve report as "key = value" lines (config echo, stamp size, ellipticity
// profile, error estimates, timings, warnings).
void write_report(std::ostream& out, const SolveReport& r,
                  const std::string& preset, std::size_t d,
                  const SolverConfig& cfg);

// One row of the experiment results table.
struct ResultRow {
  std::string preset;
  std::size_t d = 0;
  std::uint64_t K = 0;
  std::size_t s = 0;
  int N = 0;
  std::uint64_t seed = 0;
  std::size_t stamp_size = 0;
  std::optional<double> err_exact;
  std::optional<double> err_mc;
  std::optional<double> trunc_bound;
  double t_sft = 0, t_stamp = 0, t_assemble = 0, t_solve = 0;
  std::optional<double> err_l2;  // daubechies runs: reference L2 error
  std::optional<double> err_h1;  // daubechies runs: reference H1 error
  std::optional<std::string> note;  // failure description for skipped rows
};

// Fixed schema preset,d,K,s,N,seed,stamp_size,err_exact,err_mc,trunc_bound,
// t_sft,t_stamp,t_assemble,t_solve. with_reference_errors appends
// err_l2,err_h1. Missing optional values are written as nan; a trailing
// note column is added only when some row carries one.
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows,
                       bool with_reference_errors);

}  // namespace sparsespec
