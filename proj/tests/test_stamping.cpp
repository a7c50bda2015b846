#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sparsespec/rng.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/stamping.hpp"
#include "sparsespec/types.hpp"

using namespace sparsespec;

namespace {

Frequency fr(std::vector<std::int64_t> k) { return Frequency(std::move(k)); }

std::vector<Frequency> sym_stamp_1d(std::vector<std::int64_t> offsets) {
  std::vector<Frequency> out = {fr({0})};
  for (std::int64_t o : offsets) {
    out.push_back(fr({o}));
    out.push_back(fr({-o}));
  }
  return out;
}

// Test-local oracle: iterated Minkowski sums with minimal-level tagging.
std::map<Frequency, int> minkowski_levels(const std::vector<Frequency>& stamp,
                                          const std::vector<Frequency>& f, int N) {
  std::map<Frequency, int> levels;
  std::set<Frequency> current(f.begin(), f.end());
  for (const auto& k : current) levels.emplace(k, 0);
  for (int n = 1; n <= N; ++n) {
    std::set<Frequency> next;
    for (const auto& k : current)
      for (const auto& s : stamp) next.insert(k.checked_add(s));
    for (const auto& k : next) levels.emplace(k, n);
    current = std::move(next);
  }
  return levels;
}

std::vector<Frequency> random_freqs(std::size_t dim, std::size_t n, Rng& rng) {
  std::set<Frequency> out;
  while (out.size() < n) {
    std::vector<std::int64_t> k(dim);
    for (auto& v : k) v = rng.range_int(-5, 5);
    out.insert(Frequency(k));
  }
  return {out.begin(), out.end()};
}

std::vector<Frequency> random_sym_stamp(std::size_t dim, std::size_t pairs,
                                        Rng& rng) {
  std::set<Frequency> out = {Frequency::zero(dim)};
  while (out.size() < 2 * pairs + 1) {
    std::vector<std::int64_t> k(dim);
    for (auto& v : k) v = rng.range_int(-3, 3);
    Frequency f(k);
    if (f.is_zero()) continue;
    out.insert(f.negated());
    out.insert(std::move(f));
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("stamp {0} reproduces F at every level") {
  const std::vector<Frequency> f = {fr({2, -1}), fr({0, 3})};
  const StampSet s = stamp_set({Frequency::zero(2)}, f, 5);
  CHECK(s.size() == 2);
  CHECK(s.level() == 5);
  CHECK(s.level_of(fr({2, -1})) == 0);
  CHECK(s.level_of(fr({0, 3})) == 0);
  CHECK(s.level_of(fr({1, 1})) == -1);
}

TEST_CASE("1d pinned stamping example") {
  const StampSet s = stamp_set(sym_stamp_1d({1}), {fr({5})}, 2);
  CHECK(s.size() == 5);
  CHECK(s.level_of(fr({3})) == 2);
  CHECK(s.level_of(fr({4})) == 1);
  CHECK(s.level_of(fr({5})) == 0);
  CHECK(s.level_of(fr({6})) == 1);
  CHECK(s.level_of(fr({7})) == 2);
}

TEST_CASE("2d pinned stamping example") {
  const std::vector<Frequency> stamp = {fr({0, 0}), fr({1, 1}), fr({-1, -1})};
  const StampSet s = stamp_set(stamp, {fr({0, 2})}, 1);
  CHECK(s.size() == 3);
  CHECK(s.level_of(fr({0, 2})) == 0);
  CHECK(s.level_of(fr({1, 3})) == 1);
  CHECK(s.level_of(fr({-1, 1})) == 1);
}

TEST_CASE("stamp validation") {
  // Missing zero.
  CHECK_THROWS_AS((void)stamp_set({fr({1}), fr({-1})}, {fr({0})}, 1),
                  InvalidStamp);
  // Not symmetric.
  CHECK_THROWS_AS((void)stamp_set({fr({0}), fr({1})}, {fr({0})}, 1),
                  InvalidStamp);
  // Empty F.
  CHECK_THROWS_AS((void)stamp_set({fr({0})}, {}, 1), Error);
  // Dimension mix.
  CHECK_THROWS_AS((void)stamp_set({fr({0, 0})}, {fr({1})}, 1),
                  DimensionMismatch);
}

TEST_CASE("stamp_set matches the brute-force Minkowski oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t dim = 1 + rng.below(3);
    const auto stamp = random_sym_stamp(dim, 1 + rng.below(3), rng);
    const auto f = random_freqs(dim, 1 + rng.below(4), rng);
    const int N = static_cast<int>(rng.below(5));
    const StampSet got = stamp_set(stamp, f, N);
    const auto want = minkowski_levels(stamp, f, N);
    REQUIRE(got.size() == want.size());
    for (const auto& [k, lvl] : want) CHECK(got.level_of(k) == lvl);
  }
}

TEST_CASE("levels are nested: every level-n entry extends level n-1") {
  Rng rng(43);
  const auto stamp = random_sym_stamp(2, 2, rng);
  const auto f = random_freqs(2, 3, rng);
  const StampSet s = stamp_set(stamp, f, 4);
  for (const auto& [k, lvl] : s.levels()) {
    if (lvl == 0) continue;
    bool has_parent = false;
    for (const auto& st : stamp) {
      const Frequency parent = k.checked_sub(st);
      has_parent = has_parent || s.level_of(parent) == lvl - 1;
    }
    CHECK(has_parent);
  }
}

TEST_CASE("enumeration cap throws StampOverflow") {
  const auto stamp = sym_stamp_1d({1, 2, 3});
  CHECK_THROWS_AS((void)stamp_set(stamp, {fr({0})}, 10, 20), StampOverflow);
  // Generous cap passes.
  CHECK(stamp_set(stamp, {fr({0})}, 10, 1000).size() == 61);
}

TEST_CASE("adr stamp is the union of component supports") {
  // a = {0, +-1}, b_1 = {0, +-2}, c = {0}: combined stamp {0, +-1, +-2},
  // so level 1 of F = {3} is {1,...,5}.
  const std::vector<std::vector<Frequency>> ops = {
      sym_stamp_1d({1}), sym_stamp_1d({2}), {fr({0})}};
  const StampSet s = stamp_set_adr(ops, {fr({3})}, 1);
  CHECK(s.size() == 5);
  CHECK(s.level_of(fr({3})) == 0);
  CHECK(s.level_of(fr({1})) == 1);
  CHECK(s.level_of(fr({2})) == 1);
  CHECK(s.level_of(fr({4})) == 1);
  CHECK(s.level_of(fr({5})) == 1);
  CHECK_FALSE(s.contains(fr({0})));
  CHECK_FALSE(s.contains(fr({6})));
}

TEST_CASE("adr stamp with singleton extras equals the plain stamp") {
  Rng rng(47);
  const auto a_supp = random_sym_stamp(2, 2, rng);
  const auto f = random_freqs(2, 2, rng);
  const std::vector<Frequency> zero = {Frequency::zero(2)};
  const StampSet adr = stamp_set_adr({a_supp, zero, zero, zero}, f, 3);
  const StampSet plain = stamp_set(a_supp, f, 3);
  REQUIRE(adr.size() == plain.size());
  for (const auto& [k, lvl] : plain.levels()) CHECK(adr.level_of(k) == lvl);
}

TEST_CASE("adr stamp requires a symmetric union") {
  const std::vector<std::vector<Frequency>> ops = {
      {fr({0}), fr({1})},  // asymmetric component; union must catch it
      {fr({0})}};
  CHECK_THROWS_AS((void)stamp_set_adr(ops, {fr({0})}, 1), InvalidStamp);
}

TEST_CASE("cardinality_bound_simple pinned values") {
  CHECK(cardinality_bound_simple(3, 1) == 189);   // 7 * 3^3
  CHECK(cardinality_bound_simple(3, 2) == 875);   // 7 * 5^3
  CHECK(cardinality_bound_simple(5, 3) == 117649);  // 7 * 7^5
  // Saturation instead of overflow.
  CHECK(cardinality_bound_simple(99, 40) == UINT64_MAX);
  // Stamp sizes are odd counts >= 3 by construction; others are rejected.
  CHECK_THROWS_AS((void)cardinality_bound_simple(1, 4), Error);
  CHECK_THROWS_AS((void)cardinality_bound_simple(4, 1), Error);
}

TEST_CASE("cardinality_bound_combinatorial pinned values") {
  CHECK(cardinality_bound_combinatorial(3, 0, 1) == 1);
  CHECK(cardinality_bound_combinatorial(3, 0, 9) == 9);
  CHECK(cardinality_bound_combinatorial(3, 1, 1) == 3);
  CHECK(cardinality_bound_combinatorial(3, 1, 4) == 12);
  CHECK(cardinality_bound_combinatorial(3, 2, 1) == 5);
  // r = 2: N=1 term adds 2^1 C(2,1) C(0,0) = 4.
  CHECK(cardinality_bound_combinatorial(5, 1, 1) == 5);
  CHECK(cardinality_bound_combinatorial(5, 1, 3) == 15);
}

TEST_CASE("enumerated sizes respect both cardinality bounds") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 1 + rng.below(3);
    const std::size_t pairs = 1 + rng.below(3);  // stamp size s = 2 pairs + 1
    const std::uint64_t s = 2 * pairs + 1;
    const auto stamp = random_sym_stamp(dim, pairs, rng);
    if (stamp.size() != s) continue;  // rejection collapsed a pair
    const std::size_t f_size = 1 + rng.below(s);  // |F| <= s
    const auto f = random_freqs(dim, f_size, rng);
    const int N = static_cast<int>(rng.below(4));
    const StampSet got = stamp_set(stamp, f, N);
    CHECK(got.size() <= cardinality_bound_simple(s, N));
    CHECK(got.size() <= cardinality_bound_combinatorial(s, N, f_size));
  }
}

TEST_CASE("combinatorial bound is attained for generic s = 3 draws") {
  // Stamp {0, +-k} with F in general position: |S^1| = 3 |F| exactly.
  const std::vector<Frequency> stamp = {fr({0, 0}), fr({100, 41}),
                                        fr({-100, -41})};
  const std::vector<Frequency> f = {fr({1, 0}), fr({0, 7}), fr({5, 3})};
  const StampSet s = stamp_set(stamp, f, 1);
  CHECK(s.size() == 9);
  CHECK(s.size() == cardinality_bound_combinatorial(3, 1, f.size()));
}
