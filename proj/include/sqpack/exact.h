#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sqpack/model.h"

namespace sqpack {

struct SquarePlacement {
  Rational size;
  Rational x;
  Rational y;
};

struct FeasibilityCertificate {
  bool feasible = false;
  // One entry per input size, in input order, when feasible.
  std::vector<SquarePlacement> placements;
};

struct SearchLimits {
  int max_items = 9;
  std::int64_t node_budget = 200'000'000;
  double time_budget_seconds = 120.0;
};

// Decides whether the squares fit together in one unit bin.
//
// Any feasible packing can be pushed left, then down, until every item rests
// against the wall or another item; afterwards each coordinate is a sum of
// sizes of other items (the chain of blockers). The search therefore tries,
// for items in non-increasing size order, every position whose coordinates
// are such subset sums. Identical sizes are placed in increasing (y, x)
// order and the first item is confined to the lower half (the lower-left
// quadrant when its size is unique), both of which preserve completeness.
//
// Throws BudgetExceeded when there are more than limits.max_items sizes or
// the node/time budget runs out.
FeasibilityCertificate fits_in_unit_bin(std::span<const Rational> sizes,
                                        const SearchLimits& limits = {});

// Memoizes fits_in_unit_bin by size multiset.
class FitCache {
 public:
  explicit FitCache(SearchLimits limits = {}) : limits_(limits) {}

  // The certificate's placements follow the order of `sizes`.
  FeasibilityCertificate fits(std::span<const Rational> sizes);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  SearchLimits limits_;
  // Key: sorted sizes; value: certificate over the sorted sizes.
  std::map<std::vector<Rational>, FeasibilityCertificate> memo_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct ExactResult {
  Packing packing;
  std::int64_t cost = 0;
  std::int64_t nodes = 0;
};

struct ExactOptions {
  bool use_cache = true;
};

// Optimal min-sum packing by branch and bound over ordered partitions into
// bins 1..m. Bin feasibility comes from fits_in_unit_bin. Bins are generated
// with non-increasing item counts (reordering by count never increases the
// cost), equal-count bins by increasing smallest item id, and a branch is cut
// when its cost so far plus (j-1)|rest| + lb1(rest) reaches the incumbent.
// Throws BudgetExceeded past the limits.
ExactResult exact_min_sum(const Instance& inst, const SearchLimits& limits = {},
                          const ExactOptions& options = {});

}  // namespace sqpack
