#include "sqpack/ffds.h"

#include <array>
#include <vector>

#include "sqpack/errors.h"
#include "sqpack/shelves.h"

namespace sqpack {
namespace {

struct CornerBin {
  Rational capacity;  // largest side a companion may have
  std::array<bool, 4> used{};

  int free_corners() const {
    int n = 0;
    for (bool u : used) n += u ? 0 : 1;
    return n;
  }
};

}  // namespace

std::pair<Rational, Rational> corner_position(Corner corner, const Rational& size) {
  const Rational far = Rational(1) - size;
  switch (corner) {
    case Corner::kBottomLeft: return {Rational(0), Rational(0)};
    case Corner::kBottomRight: return {far, Rational(0)};
    case Corner::kTopLeft: return {Rational(0), far};
    case Corner::kTopRight: return {far, far};
  }
  return {Rational(0), Rational(0)};
}

Packing ffds(std::span<const Item> items) {
  const Rational third(1, 3);
  const Rational half(1, 2);
  std::vector<Item> big;
  std::vector<Item> rest;
  for (const Item& it : items) {
    if (it.size <= third) {
      throw InvalidArgument("ffds: item " + std::to_string(it.id) + " of size " + it.size.str() +
                            " is not larger than 1/3");
    }
    (it.size > half ? big : rest).push_back(it);
  }
  big = sorted_non_decreasing(big);
  rest = sorted_non_increasing(rest);

  Packing p;
  std::vector<CornerBin> bins;
  for (const Item& it : big) {
    CornerBin b{Rational(1) - it.size, {}};
    b.used[static_cast<int>(Corner::kBottomLeft)] = true;
    bins.push_back(b);
    p.add({it.id, static_cast<int>(bins.size()), Rational(0), Rational(0)});
  }

  std::size_t next = 0;
  while (next < rest.size()) {
    const Rational& s = rest[next].size;
    std::size_t target = bins.size();
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (bins[b].free_corners() > 0 && s <= bins[b].capacity) {
        target = b;
        break;
      }
    }
    if (target == bins.size()) {
      // No big item: any two items of size <= 1/2 fit in opposite corners.
      bins.push_back({half, {}});
    }
    CornerBin& bin = bins[target];
    for (int c = 0; c < 4 && next < rest.size(); ++c) {
      if (bin.used[static_cast<std::size_t>(c)]) continue;
      const Item& it = rest[next++];
      auto [x, y] = corner_position(static_cast<Corner>(c), it.size);
      p.add({it.id, static_cast<int>(target) + 1, std::move(x), std::move(y)});
      bin.used[static_cast<std::size_t>(c)] = true;
    }
  }
  return p;
}

Packing ffds_minsum(std::span<const Item> items) {
  return reorder_bins_by_count(ffds(items));
}

}  // namespace sqpack
