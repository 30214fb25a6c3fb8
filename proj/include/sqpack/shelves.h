#pragma once

#include <span>
#include <vector>

#include "sqpack/model.h"

namespace sqpack {

// Items sorted by size, ties by id.
std::vector<Item> sorted_non_increasing(std::span<const Item> items);
std::vector<Item> sorted_non_decreasing(std::span<const Item> items);

// Next Fit Decreasing Height. Shelves are stacked from y = 0 and items are
// left-justified on each shelf; a shelf's height is its first item.
Packing nfdh(std::span<const Item> items);

// First Fit Decreasing Height: an item goes on the first shelf (in bin order)
// with room, else on a new shelf in the first bin with room for it, else in
// a new bin.
Packing ffdh(std::span<const Item> items);

// Next Fit Increasing Height. A level's height is its last item. Once a
// level no longer fits inside the current bin, levels are stacked above the
// bin; after four such overflow levels the next bin is opened. Throws
// InvalidArgument if an item exceeds `max_size`.
RelaxedPacking nfih(std::span<const Item> items, const Rational& max_size);

// Turns an NFIH packing into a feasible one. Bins are grouped into blocks of
// floor(1/(4*threshold)) bins; each block's overflow levels are restacked
// into one new bin, placed at index 1/eps for the first block (or right after
// the block if it is shorter) and in front of the block otherwise.
// `threshold` is the NFIH item-size cap (eps^(p+3) in the PTAS). Requires
// 1/eps integral, threshold <= 1/4 and every overflow level no taller than
// threshold.
Packing feasibilize(const RelaxedPacking& q, const Rational& eps, const Rational& threshold);

}  // namespace sqpack
