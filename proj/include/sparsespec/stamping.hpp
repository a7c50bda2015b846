#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sparsespec/spectrum.hpp"
#include "sparsespec/types.hpp"

namespace sparsespec {

inline constexpr std::size_t kDefaultStampCap = 2'000'000;

// Level-tagged frequency set S^N built by iterated Minkowski sums
// S^n = S^{n-1} + stamp, S^0 = F. Each frequency is tagged with the smallest
// level at which it appears. The zero frequency may be a member; assembly
// decides whether it joins the solve index.
class StampSet {
 public:
  StampSet(std::size_t dim, int level, std::map<Frequency, int> levels)
      : dim_(dim), level_(level), levels_(std::move(levels)) {}

  std::size_t dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t size() const { return levels_.size(); }
  bool contains(const Frequency& k) const { return levels_.count(k) != 0; }
  bool contains_zero() const { return contains(Frequency::zero(dim_)); }
  // Minimal level of k; -1 if absent.
  int level_of(const Frequency& k) const;
  // Lexicographic iteration order.
  const std::map<Frequency, int>& levels() const { return levels_; }
  std::vector<Frequency> frequencies() const;

 private:
  std::size_t dim_;
  int level_;
  std::map<Frequency, int> levels_;
};

// BFS enumeration of S^N. stamp_supp must contain 0 and be symmetric
// (stamp_supp == -stamp_supp); f_supp must be non-empty. Throws StampOverflow
// when the enumeration exceeds cap.
StampSet stamp_set(const std::vector<Frequency>& stamp_supp,
                   const std::vector<Frequency>& f_supp, int N,
                   std::size_t cap = kDefaultStampCap);

// Advection-diffusion-reaction stamp: the combined stamp is
// {0} U supp(a_hat) U supp(b_hat_1) U ... U supp(b_hat_d) U supp(c_hat)
// (the operator couples row k to column l iff k - l lies in some component
// support), then levels are built exactly as in stamp_set. The combined
// stamp must be symmetric. With all extra supports {0} this reduces to
// stamp_set(a_supp, f_supp, N).
StampSet stamp_set_adr(const std::vector<std::vector<Frequency>>& op_supports,
                       const std::vector<Frequency>& f_supp, int N,
                       std::size_t cap = kDefaultStampCap);

// |S^N| <= 7 max(s, 2N+1)^min(s, 2N+1) for odd stamp size s >= 3 and
// |f_supp| <= s. Saturates at UINT64_MAX.
std::uint64_t cardinality_bound_simple(std::uint64_t s, int N);

// Exact-combinatorics bound
// |S^N| <= f_size * sum_{n=0..N} sum_{t=0..min(n,r)} 2^t C(r,t) C(n-1,t-1)
// with r = (s-1)/2, C(-1,-1) = 1, C(m,-1) = 0 for m >= 0. Requires odd s.
// Saturates at UINT64_MAX. Attained for generic frequency draws.
std::uint64_t cardinality_bound_combinatorial(std::uint64_t s, int N,
                                              std::uint64_t f_size);

}  // namespace sparsespec
