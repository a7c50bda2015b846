#include "sparsespec/stamping.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <fmt/core.h>

namespace sparsespec {

int StampSet::level_of(const Frequency& k) const {
  auto it = levels_.find(k);
  return it == levels_.end() ? -1 : it->second;
}

std::vector<Frequency> StampSet::frequencies() const {
  std::vector<Frequency> out;
  out.reserve(levels_.size());
  for (const auto& [k, lvl] : levels_) out.push_back(k);
  return out;
}

namespace {

std::size_t common_dim(const std::vector<Frequency>& stamp_supp,
                       const std::vector<Frequency>& f_supp) {
  if (f_supp.empty()) throw Error("stamp_set: empty rhs support");
  const std::size_t dim = f_supp.front().dim();
  for (const Frequency& k : stamp_supp)
    if (k.dim() != dim) throw DimensionMismatch("stamp_set: mixed dimensions");
  for (const Frequency& k : f_supp)
    if (k.dim() != dim) throw DimensionMismatch("stamp_set: mixed dimensions");
  return dim;
}

void validate_stamp(const std::set<Frequency>& stamp, std::size_t dim) {
  if (stamp.count(Frequency::zero(dim)) == 0)
    throw InvalidStamp("stamp support must contain the zero frequency");
  for (const Frequency& k : stamp)
    if (stamp.count(k.negated()) == 0)
      throw InvalidStamp("stamp support must be symmetric (S = -S)");
}

StampSet bfs_levels(const std::set<Frequency>& stamp,
                    const std::vector<Frequency>& f_supp, std::size_t dim,
                    int N, std::size_t cap) {
  if (N < 0) throw Error("stamp_set: negative level");
  std::unordered_map<Frequency, int, FrequencyHash> visited;
  visited.reserve(std::min<std::size_t>(cap, 4 * f_supp.size() + 64));
  std::vector<Frequency> frontier;
  for (const Frequency& k : f_supp)
    if (visited.emplace(k, 0).second) frontier.push_back(k);
  // First visit is the minimal level: level n only inspects sums of level
  // n-1 members, so a frequency reachable at level n is found at level n.
  for (int n = 1; n <= N && !frontier.empty(); ++n) {
    std::vector<Frequency> next;
    for (const Frequency& base : frontier) {
      for (const Frequency& s : stamp) {
        Frequency cand = base.checked_add(s);
        auto [it, inserted] = visited.emplace(std::move(cand), n);
        if (inserted) {
          if (visited.size() > cap)
            throw StampOverflow(fmt::format(
                "stamp enumeration exceeded cap {} at level {}", cap, n));
          next.push_back(it->first);
        }
      }
    }
    frontier = std::move(next);
  }
  std::map<Frequency, int> levels(visited.begin(), visited.end());
  return StampSet(dim, N, std::move(levels));
}

}  // namespace

StampSet stamp_set(const std::vector<Frequency>& stamp_supp,
                   const std::vector<Frequency>& f_supp, int N,
                   std::size_t cap) {
  const std::size_t dim = common_dim(stamp_supp, f_supp);
  std::set<Frequency> stamp(stamp_supp.begin(), stamp_supp.end());
  validate_stamp(stamp, dim);
  return bfs_levels(stamp, f_supp, dim, N, cap);
}

StampSet stamp_set_adr(const std::vector<std::vector<Frequency>>& op_supports,
                       const std::vector<Frequency>& f_supp, int N,
                       std::size_t cap) {
  if (f_supp.empty()) throw Error("stamp_set_adr: empty rhs support");
  const std::size_t dim = f_supp.front().dim();
  // Combined stamp: union of the component supports plus 0. Row k of the
  // operator couples column l exactly when k - l lies in some support, so
  // the union (not a Minkowski sum of the supports) drives the expansion.
  std::set<Frequency> stamp;
  stamp.insert(Frequency::zero(dim));
  for (const auto& supp : op_supports)
    for (const Frequency& k : supp) {
      if (k.dim() != dim)
        throw DimensionMismatch("stamp_set_adr: mixed dimensions");
      stamp.insert(k);
    }
  for (const Frequency& k : f_supp)
    if (k.dim() != dim)
      throw DimensionMismatch("stamp_set_adr: mixed dimensions");
  validate_stamp(stamp, dim);
  return bfs_levels(stamp, f_supp, dim, N, cap);
}

namespace {

// Saturating arithmetic on uint64.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r = sat_mul(r, base);
    if (r == UINT64_MAX) return r;
  }
  return r;
}

// C(n, k) saturated; n, k small in practice (n <= ~60).
std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is integral at every step.
    if (r > UINT64_MAX / (n - k + i)) return UINT64_MAX;
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace

std::uint64_t cardinality_bound_simple(std::uint64_t s, int N) {
  if (s < 3 || s % 2 == 0)
    throw Error("cardinality_bound_simple: stamp size must be odd and >= 3");
  if (N < 0) throw Error("cardinality_bound_simple: negative level");
  const std::uint64_t w = 2 * static_cast<std::uint64_t>(N) + 1;
  return sat_mul(7, sat_pow(std::max(s, w), std::min(s, w)));
}

std::uint64_t cardinality_bound_combinatorial(std::uint64_t s, int N,
                                              std::uint64_t f_size) {
  if (s < 3 || s % 2 == 0)
    throw Error(
        "cardinality_bound_combinatorial: stamp size must be odd and >= 3");
  if (N < 0) throw Error("cardinality_bound_combinatorial: negative level");
  if (f_size == 0)
    throw Error("cardinality_bound_combinatorial: empty rhs support");
  const std::uint64_t r = (s - 1) / 2;
  std::uint64_t total = 0;
  for (int n = 0; n <= N; ++n) {
    const std::uint64_t tmax =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(n), r);
    for (std::uint64_t t = 0; t <= tmax; ++t) {
      std::uint64_t inner;
      if (t == 0) {
        // C(n-1, -1): 1 for n == 0 (the empty sum), 0 for n >= 1.
        inner = (n == 0) ? 1 : 0;
      } else {
        inner = binom(static_cast<std::uint64_t>(n) - 1, t - 1);
      }
      const std::uint64_t term =
          sat_mul(sat_pow(2, t), sat_mul(binom(r, t), inner));
      total = sat_add(total, term);
    }
  }
  return sat_mul(f_size, total);
}

}  // namespace sparsespec
