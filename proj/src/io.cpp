#include "sparsespec/io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

namespace sparsespec {

namespace {

// 17 significant digits: doubles round-trip exactly and output is
// byte-deterministic across runs.
std::string fd(double v) { return fmt::format("{:.17g}", v); }

std::string fd_opt(const std::optional<double>& v) {
  return fd(v.value_or(std::numeric_limits<double>::quiet_NaN()));
}

void write_freq_header(std::ostream& out, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) out << "k_" << (j + 1) << ',';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string sanitize_note(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const SparseSpectrum& s) {
  write_freq_header(out, s.dim());
  out << "re,im\n";
  for (const auto& [k, v] : s.entries()) {
    for (std::int64_t c : k.k) out << c << ',';
    out << fd(v.real()) << ',' << fd(v.imag()) << '\n';
  }
}

std::string spectrum_to_csv(const SparseSpectrum& s) {
  std::ostringstream os;
  write_spectrum_csv(os, s);
  return os.str();
}

SparseSpectrum read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error("read_spectrum_csv: missing header");
  const std::vector<std::string> head = split_csv_line(line);
  if (head.size() < 3 || head[head.size() - 2] != "re" ||
      head.back() != "im")
    throw Error("read_spectrum_csv: bad header");
  const std::size_t d = head.size() - 2;
  for (std::size_t j = 0; j < d; ++j)
    if (head[j] != fmt::format("k_{}", j + 1))
      throw Error("read_spectrum_csv: bad header");

  SparseSpectrum s(d);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != d + 2)
      throw Error(fmt::format("read_spectrum_csv: line {}: expected {} fields",
                              lineno, d + 2));
    try {
      std::vector<std::int64_t> k(d);
      for (std::size_t j = 0; j < d; ++j) k[j] = std::stoll(f[j]);
      s.set(Frequency(std::move(k)),
            Complex(std::stod(f[d]), std::stod(f[d + 1])));
    } catch (const std::logic_error&) {
      throw Error(fmt::format("read_spectrum_csv: line {}: parse error",
                              lineno));
    }
  }
  return s;
}

void write_stamp_csv(std::ostream& out, const StampSet& s) {
  write_freq_header(out, s.dim());
  out << "level\n";
  for (const auto& [k, lvl] : s.levels()) {
    for (std::int64_t c : k.k) out << c << ',';
    out << lvl << '\n';
  }
}

void write_report(std::ostream& out, const SolveReport& r,
                  const std::string& preset, std::size_t d,
                  const SolverConfig& cfg) {
  out << "preset = " << preset << '\n';
  out << "d = " << d << '\n';
  out << "K = " << cfg.K << '\n';
  out << "s = " << cfg.s << '\n';
  out << "N = " << cfg.N << '\n';
  out << "sigma = " << fd(cfg.sigma) << '\n';
  out << "mc_samples = " << cfg.mc_samples << '\n';
  out << "seed = " << r.seed << '\n';
  out << "stamp_size = " << r.stamp_size << '\n';
  out << "solution_terms = " << r.u_hat.size() << '\n';
  out << "a0 = " << fd(r.profile.a0) << '\n';
  out << "deviation_l1 = " << fd(r.profile.deviation_l1) << '\n';
  out << "a_min_lb = " << fd(r.profile.a_min_lb) << '\n';
  out << "A = " << fd(r.profile.A) << '\n';
  out << "decay_hypothesis = " << (r.profile.decay_hypothesis ? "true" : "false")
      << '\n';
  out << "decay_base = " << fd(r.profile.decay_base) << '\n';
  out << "truncation_bound = " << fd_opt(r.truncation_bound) << '\n';
  out << "proxy_error_exact = " << fd_opt(r.proxy_error_exact) << '\n';
  out << "proxy_error_mc = " << fd_opt(r.proxy_error_mc) << '\n';
  out << "t_sft = " << fd(r.t_sft) << '\n';
  out << "t_stamp = " << fd(r.t_stamp) << '\n';
  out << "t_assemble = " << fd(r.t_assemble) << '\n';
  out << "t_solve = " << fd(r.t_solve) << '\n';
  for (const std::string& w : r.warnings) out << "warning = " << w << '\n';
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows,
                       bool with_reference_errors) {
  bool any_note = false;
  for (const ResultRow& r : rows) any_note |= r.note.has_value();

  out << "preset,d,K,s,N,seed,stamp_size,err_exact,err_mc,trunc_bound,"
         "t_sft,t_stamp,t_assemble,t_solve";
  if (with_reference_errors) out << ",err_l2,err_h1";
  if (any_note) out << ",note";
  out << '\n';

  for (const ResultRow& r : rows) {
    out << r.preset << ',' << r.d << ',' << r.K << ',' << r.s << ',' << r.N
        << ',' << r.seed << ',' << r.stamp_size << ',' << fd_opt(r.err_exact)
        << ',' << fd_opt(r.err_mc) << ',' << fd_opt(r.trunc_bound) << ','
        << fd(r.t_sft) << ',' << fd(r.t_stamp) << ',' << fd(r.t_assemble)
        << ',' << fd(r.t_solve);
    if (with_reference_errors)
      out << ',' << fd_opt(r.err_l2) << ',' << fd_opt(r.err_h1);
    if (any_note) out << ',' << sanitize_note(r.note.value_or(""));
    out << '\n';
  }
}

}  // namespace sparsespec
