// Text formats: exact round-trips, golden outputs, schema rules.
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "sparsespec/io.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/stamping.hpp"

using namespace sparsespec;

namespace {

Frequency fr(std::initializer_list<std::int64_t> c) {
  return Frequency(std::vector<std::int64_t>(c));
}

SparseSpectrum from_csv(const std::string& text) {
  std::istringstream in(text);
  return read_spectrum_csv(in);
}

}  // namespace

TEST_CASE("spectrum csv golden output") {
  SparseSpectrum s(2);
  s.set(fr({7, -1}), Complex(2.0, 0.0));
  s.set(fr({-3, 4}), Complex(1.5, -0.25));
  // Lexicographic row order, %.17g values with trailing zeros trimmed.
  CHECK(spectrum_to_csv(s) ==
        "k_1,k_2,re,im\n"
        "-3,4,1.5,-0.25\n"
        "7,-1,2,0\n");

  SparseSpectrum empty(3);
  CHECK(spectrum_to_csv(empty) == "k_1,k_2,k_3,re,im\n");
}

TEST_CASE("spectrum csv round-trips bit-exactly") {
  SparseSpectrum s(3);
  s.set(fr({0, 0, 0}), Complex(0.1, 0.0));  // not exactly representable
  s.set(fr({1, -2, 3}), Complex(1.0 / 3.0, -7.0 / 11.0));
  s.set(fr({-500, 499, 0}), Complex(1e-30, 1e20));
  s.set(fr({4611686018427387904, 1, -1}), Complex(-2.5e-14, 3.75));

  const SparseSpectrum back = from_csv(spectrum_to_csv(s));
  REQUIRE(back.dim() == 3);
  REQUIRE(back.size() == s.size());
  CHECK(back.entries() == s.entries());

  // A second pass through text changes nothing.
  CHECK(spectrum_to_csv(back) == spectrum_to_csv(s));
}

TEST_CASE("spectrum csv read validation") {
  CHECK_THROWS_AS(from_csv(""), Error);                      // no header
  CHECK_THROWS_AS(from_csv("re,im\n"), Error);               // no k columns
  CHECK_THROWS_AS(from_csv("k_1,re,imag\n"), Error);         // bad names
  CHECK_THROWS_AS(from_csv("q_1,re,im\n"), Error);
  CHECK_THROWS_AS(from_csv("k_1,k_3,re,im\n"), Error);       // wrong index
  CHECK_THROWS_AS(from_csv("k_1,re,im\n3,1.0\n"), Error);    // short row
  CHECK_THROWS_AS(from_csv("k_1,re,im\n3,1.0,0.0,9\n"), Error);
  CHECK_THROWS_AS(from_csv("k_1,re,im\nx,1.0,0.0\n"), Error);
  CHECK_THROWS_AS(from_csv("k_1,re,im\n3,one,0.0\n"), Error);

  // Blank lines and CRLF endings are tolerated.
  const SparseSpectrum s = from_csv("k_1,re,im\r\n\n3,1.5,0\r\n");
  REQUIRE(s.size() == 1);
  CHECK(s.at(fr({3})) == Complex(1.5, 0.0));
}

TEST_CASE("stamp csv golden output") {
  // a-support {0, +-1}, rhs {3}, two rounds of stamping.
  const StampSet st = stamp_set({fr({-1}), fr({0}), fr({1})}, {fr({3})}, 2);
  std::ostringstream out;
  write_stamp_csv(out, st);
  CHECK(out.str() ==
        "k_1,level\n"
        "1,2\n"
        "2,1\n"
        "3,0\n"
        "4,1\n"
        "5,2\n");
}

TEST_CASE("report golden output") {
  SolveReport rep;
  rep.u_hat = SparseSpectrum(1);
  rep.a_hat_s = SparseSpectrum(1);
  rep.f_hat_s = SparseSpectrum(1);
  rep.stamp_size = 5;
  rep.profile.a0 = 4.5;
  rep.profile.deviation_l1 = 0.5;
  rep.profile.a_min_lb = 4.0;
  rep.profile.A = 0.125;
  rep.profile.decay_hypothesis = true;
  rep.profile.decay_base = 0.25;
  rep.truncation_bound = 0.03125;
  rep.proxy_error_mc = 0.125;  // proxy_error_exact stays absent
  rep.seed = 9;
  rep.warnings = {"alpha", "beta"};

  SolverConfig cfg;
  cfg.K = 16;
  cfg.s = 2;
  cfg.N = 1;
  cfg.sigma = 0.5;
  cfg.mc_samples = 0;
  cfg.seed = 9;

  std::ostringstream out;
  write_report(out, rep, "unit", 1, cfg);
  CHECK(out.str() ==
        "preset = unit\n"
        "d = 1\n"
        "K = 16\n"
        "s = 2\n"
        "N = 1\n"
        "sigma = 0.5\n"
        "mc_samples = 0\n"
        "seed = 9\n"
        "stamp_size = 5\n"
        "solution_terms = 0\n"
        "a0 = 4.5\n"
        "deviation_l1 = 0.5\n"
        "a_min_lb = 4\n"
        "A = 0.125\n"
        "decay_hypothesis = true\n"
        "decay_base = 0.25\n"
        "truncation_bound = 0.03125\n"
        "proxy_error_exact = nan\n"
        "proxy_error_mc = 0.125\n"
        "t_sft = 0\n"
        "t_stamp = 0\n"
        "t_assemble = 0\n"
        "t_solve = 0\n"
        "warning = alpha\n"
        "warning = beta\n");
}

TEST_CASE("results csv schema") {
  ResultRow row;
  row.preset = "sparse-low";
  row.d = 1;
  row.K = 1000;
  row.s = 2;
  row.N = 1;
  row.seed = 3;
  row.stamp_size = 5;
  row.err_exact = 0.25;  // err_mc / trunc_bound stay absent -> nan

  SUBCASE("base schema, absent optionals as nan") {
    const std::vector<ResultRow> rows{row};
    std::ostringstream out;
    write_results_csv(out, rows, false);
    CHECK(out.str() ==
          "preset,d,K,s,N,seed,stamp_size,err_exact,err_mc,trunc_bound,"
          "t_sft,t_stamp,t_assemble,t_solve\n"
          "sparse-low,1,1000,2,1,3,5,0.25,nan,nan,0,0,0,0\n");
  }

  SUBCASE("reference error columns only when requested") {
    ResultRow ref = row;
    ref.err_l2 = 0.5;
    ref.err_h1 = 1.5;
    const std::vector<ResultRow> rows{ref};
    std::ostringstream out;
    write_results_csv(out, rows, true);
    CHECK(out.str() ==
          "preset,d,K,s,N,seed,stamp_size,err_exact,err_mc,trunc_bound,"
          "t_sft,t_stamp,t_assemble,t_solve,err_l2,err_h1\n"
          "sparse-low,1,1000,2,1,3,5,0.25,nan,nan,0,0,0,0,0.5,1.5\n");
  }

  SUBCASE("note column appears for all rows once any row has one") {
    ResultRow noted = row;
    noted.seed = 4;
    noted.note = "solver failed, matrix\nsingular";  // sanitized to ';'
    const std::vector<ResultRow> rows{row, noted};
    std::ostringstream out;
    write_results_csv(out, rows, false);
    CHECK(out.str() ==
          "preset,d,K,s,N,seed,stamp_size,err_exact,err_mc,trunc_bound,"
          "t_sft,t_stamp,t_assemble,t_solve,note\n"
          "sparse-low,1,1000,2,1,3,5,0.25,nan,nan,0,0,0,0,\n"
          "sparse-low,1,1000,2,1,4,5,0.25,nan,nan,0,0,0,0,"
          "solver failed; matrix;singular\n");
  }

  SUBCASE("output is deterministic") {
    const std::vector<ResultRow> rows{row, row};
    std::ostringstream o1, o2;
    write_results_csv(o1, rows, true);
    write_results_csv(o2, rows, true);
    CHECK(o1.str() == o2.str());
  }
}
