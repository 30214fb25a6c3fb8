#pragma once

// Test-side reference implementations. They share no search code with the
// library; only the model types are reused.

#include <cstdint>
#include <vector>

#include "sqpack/instance.h"
#include "sqpack/model.h"

namespace sqpack::oracle {

// Pairwise check of a single bin without any sweep: every square inside
// [0,1]^2 and no two interiors meet.
bool bin_is_feasible(const std::vector<Rational>& sizes, const std::vector<Rational>& xs,
                     const std::vector<Rational>& ys);

// Plain depth-first placement, items in the given order, each at every
// (x, y) drawn from all subset sums of the sizes. No symmetry breaking and
// no sorting. Meant for at most ~5 squares.
bool reference_fits(const std::vector<Rational>& sizes);

// Minimum of sum_i bin(i) over all n^n maps items -> {1..n} whose bins are
// accepted by `fits`. No pruning. n <= 6.
template <typename Fits>
std::int64_t brute_force_min_sum(const std::vector<Rational>& sizes, Fits&& fits) {
  const int n = static_cast<int>(sizes.size());
  if (n == 0) return 0;
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  std::int64_t best = -1;
  while (true) {
    std::vector<std::vector<Rational>> bins(static_cast<std::size_t>(n));
    std::int64_t c = 0;
    for (int i = 0; i < n; ++i) {
      bins[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].push_back(
          sizes[static_cast<std::size_t>(i)]);
      c += assign[static_cast<std::size_t>(i)] + 1;
    }
    bool ok = true;
    for (const auto& b : bins) {
      if (!b.empty() && !fits(b)) {
        ok = false;
        break;
      }
    }
    if (ok && (best < 0 || c < best)) best = c;
    int k = 0;
    while (k < n && ++assign[static_cast<std::size_t>(k)] == n) assign[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return best;
}

// A random multiset of squares together with a placement that proves it
// fits one unit bin. Built by recursive quadrant splitting, corner squares
// with random sides, and L-shaped borders around a big square.
struct Construction {
  std::vector<Rational> sizes;
  std::vector<Rational> xs;
  std::vector<Rational> ys;
};
Construction random_feasible_bin(SplitMix64& rng, int max_items);

// Sum over bins of j*|B_j| recomputed from scratch.
std::int64_t recount_cost(const Packing& p);

// sum_i i|G_i| with groups cut from the non-decreasing order as soon as
// their area exceeds 1.
std::int64_t reference_lb1(std::vector<Rational> sizes);

}  // namespace sqpack::oracle
