#pragma once

#include <span>

#include "sqpack/model.h"

namespace sqpack {

enum class Corner { kBottomLeft, kBottomRight, kTopLeft, kTopRight };

// Lower-left coordinates of a square of side `size` pushed into `corner`.
std::pair<Rational, Rational> corner_position(Corner corner, const Rational& size);

// First Fit Decreasing Size for squares larger than 1/3.
//
// Items above 1/2 are sorted non-decreasing and get one bin each, bottom-left.
// The rest are sorted non-increasing; while items remain, the first one is
// tried against the opened bins in index order (a bin qualifies if it has a
// free corner and 1 - big >= size). On success the next items fill that
// bin's free corners, otherwise a new bin takes the next four items.
// Throws InvalidArgument for any size <= 1/3.
Packing ffds(std::span<const Item> items);

// ffds followed by reorder_bins_by_count; optimal for items above 1/3.
Packing ffds_minsum(std::span<const Item> items);

}  // namespace sqpack
