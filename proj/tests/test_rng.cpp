#include "doctest.h"

#include <cstdint>
#include <set>
#include <vector>

#include "sparsespec/rng.hpp"

using namespace sparsespec;

TEST_CASE("splitmix64 matches the reference stream") {
  // Reference outputs of the published splitmix64 algorithm from state 0.
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
  CHECK(splitmix64(s) == 0x06C45D188009454FULL);
  std::uint64_t t = 1234567;
  CHECK(splitmix64(t) == 0x599ED017FB08FC85ULL);
}

TEST_CASE("derive_seed is a pinned pure function of master and tag") {
  // Frozen against an independent reimplementation (FNV-1a + two splitmix
  // draws); any change here silently reshuffles every seeded run.
  CHECK(derive_seed(0, "sft:a") == 17044250611237232233ULL);
  CHECK(derive_seed(42, "mc") == 18090049407495312471ULL);
  CHECK(derive_seed(42, "sft:b2") == 2114883889899475552ULL);
}

TEST_CASE("derive_seed separates tags and masters") {
  CHECK(derive_seed(7, "sft:a") == derive_seed(7, "sft:a"));
  CHECK(derive_seed(7, "sft:a") != derive_seed(7, "sft:f"));
  CHECK(derive_seed(7, "sft:a") != derive_seed(8, "sft:a"));
  // Tag concatenation must not collide with a shifted split of the bytes.
  CHECK(derive_seed(7, "point:d1:N2") != derive_seed(7, "point:d12:N"));

  std::set<std::uint64_t> seen;
  for (int d : {1, 4, 16, 64, 256, 1024})
    for (int n = 1; n <= 5; ++n)
      seen.insert(derive_seed(3, "point:d" + std::to_string(d) + ":N" +
                                     std::to_string(n)));
  CHECK(seen.size() == 30);
}

TEST_CASE("Rng draws are deterministic per seed") {
  Rng a(99), b(99), c(100);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("Rng helpers respect their ranges") {
  Rng rng(5);
  std::set<std::uint64_t> hits;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = rng.below(3);
    CHECK(v < 3);
    hits.insert(v);
  }
  CHECK(hits.size() == 3);

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-2.5, 3.5);
    CHECK(x >= -2.5);
    CHECK(x < 3.5);
  }

  std::set<std::int64_t> ints;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t k = rng.range_int(-3, 4);
    CHECK(k >= -3);
    CHECK(k <= 4);
    ints.insert(k);
  }
  CHECK(ints.size() == 8);

  CHECK(Rng(11).below(1) == 0);
  CHECK(Rng(11).range_int(5, 5) == 5);
}
