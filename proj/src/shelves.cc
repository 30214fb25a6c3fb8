#include "sqpack/shelves.h"

#include <algorithm>
#include <utility>

#include "sqpack/errors.h"

namespace sqpack {
namespace {

struct Shelf {
  Rational y;
  Rational height;
  Rational cursor;
};

struct BinShelves {
  Rational top;  // first free y above the highest shelf
  std::vector<Shelf> shelves;
};

Rational checked_inverse_integer(const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidArgument("eps must be positive");
  const Rational inv = Rational(1) / eps;
  if (!inv.is_integer()) throw InvalidArgument("1/eps must be an integer, got eps = " + eps.str());
  return inv;
}

}  // namespace

std::vector<Item> sorted_non_increasing(std::span<const Item> items) {
  std::vector<Item> v(items.begin(), items.end());
  std::sort(v.begin(), v.end(), [](const Item& a, const Item& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.id < b.id;
  });
  return v;
}

std::vector<Item> sorted_non_decreasing(std::span<const Item> items) {
  std::vector<Item> v(items.begin(), items.end());
  std::sort(v.begin(), v.end(), [](const Item& a, const Item& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.id < b.id;
  });
  return v;
}

Packing nfdh(std::span<const Item> items) {
  const Rational one(1);
  Packing p;
  int bin = 0;
  Shelf shelf;
  for (const Item& it : sorted_non_increasing(items)) {
    const Rational& s = it.size;
    if (bin == 0) {
      bin = 1;
      shelf = {Rational(0), s, Rational(0)};
    } else if (shelf.cursor + s <= one) {
      // Same shelf; s <= shelf.height because of the ordering.
    } else if (shelf.y + shelf.height + s <= one) {
      shelf = {shelf.y + shelf.height, s, Rational(0)};
    } else {
      ++bin;
      shelf = {Rational(0), s, Rational(0)};
    }
    p.add({it.id, bin, shelf.cursor, shelf.y});
    shelf.cursor += s;
  }
  return p;
}

Packing ffdh(std::span<const Item> items) {
  const Rational one(1);
  Packing p;
  std::vector<BinShelves> bins;
  for (const Item& it : sorted_non_increasing(items)) {
    const Rational& s = it.size;
    bool placed = false;
    for (std::size_t b = 0; b < bins.size() && !placed; ++b) {
      for (Shelf& sh : bins[b].shelves) {
        if (sh.cursor + s <= one) {
          p.add({it.id, static_cast<int>(b) + 1, sh.cursor, sh.y});
          sh.cursor += s;
          placed = true;
          break;
        }
      }
    }
    if (placed) continue;
    std::size_t target = bins.size();
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (bins[b].top + s <= one) {
        target = b;
        break;
      }
    }
    if (target == bins.size()) bins.emplace_back();
    BinShelves& bs = bins[target];
    bs.shelves.push_back({bs.top, s, s});
    p.add({it.id, static_cast<int>(target) + 1, Rational(0), bs.top});
    bs.top += s;
  }
  return p;
}

RelaxedPacking nfih(std::span<const Item> items, const Rational& max_size) {
  const Rational one(1);
  RelaxedPacking q;
  for (const Item& it : items) {
    if (it.size > max_size) {
      throw InvalidArgument("nfih: item " + std::to_string(it.id) + " of size " + it.size.str() +
                            " exceeds threshold " + max_size.str());
    }
  }

  int bin = 1;
  Rational in_bin_top;
  bool overflowing = false;
  int overflow_levels = 0;
  Rational overflow_top;

  std::vector<std::pair<int, Rational>> level;  // (id, x)
  Rational cursor;
  Rational last;

  // A level's height is only known once it is closed, so placement in the
  // bin or above it is decided here.
  auto close_level = [&]() {
    if (level.empty()) return;
    const Rational height = last;
    if (!overflowing && in_bin_top + height <= one) {
      for (auto& [id, x] : level) q.in_bin.add({id, bin, x, in_bin_top});
      in_bin_top += height;
    } else {
      overflowing = true;
      q.overflow.push_back({bin, overflow_top, height, std::move(level)});
      overflow_top += height;
      if (++overflow_levels == RelaxedPacking::kMaxOverflowLevels) {
        ++bin;
        in_bin_top = Rational(0);
        overflowing = false;
        overflow_levels = 0;
        overflow_top = Rational(0);
      }
    }
    level.clear();
    cursor = Rational(0);
  };

  for (const Item& it : sorted_non_decreasing(items)) {
    if (!level.empty() && cursor + it.size > one) close_level();
    level.emplace_back(it.id, cursor);
    cursor += it.size;
    last = it.size;
  }
  close_level();
  return q;
}

Packing feasibilize(const RelaxedPacking& q, const Rational& eps, const Rational& threshold) {
  const Rational inv_eps = checked_inverse_integer(eps);
  if (threshold.sign() <= 0 || threshold > Rational(1, 4)) {
    throw InvalidArgument("feasibilize: threshold " + threshold.str() +
                          " must lie in (0, 1/4] so a block's overflow fits one bin");
  }
  if (q.overflow.empty()) return q.in_bin;
  for (const auto& lvl : q.overflow) {
    if (lvl.height > threshold) {
      throw InvalidArgument("feasibilize: overflow level of height " + lvl.height.str() +
                            " exceeds threshold " + threshold.str());
    }
  }

  const int m = q.bin_count();
  // Tiny thresholds give blocks longer than the packing; cap before the
  // int64 conversion.
  const Rational block_q = Rational(1) / (Rational(4) * threshold);
  const std::int64_t block = block_q >= Rational(m) ? std::max(m, 1) : block_q.floor();
  const std::int64_t num_blocks = (m + block - 1) / block;
  const std::int64_t first_pos = inv_eps.floor() - 1;

  // For every block with overflow: the original bin after which its new bin
  // goes, and the levels it receives in block order.
  struct NewBin {
    std::int64_t after;
    std::int64_t block;
    std::vector<const OverflowLevel*> levels;
  };
  std::vector<NewBin> fresh;
  {
    std::vector<std::vector<const OverflowLevel*>> per_block(static_cast<std::size_t>(num_blocks));
    std::vector<const OverflowLevel*> sorted;
    for (const auto& lvl : q.overflow) sorted.push_back(&lvl);
    std::stable_sort(sorted.begin(), sorted.end(), [](const OverflowLevel* a, const OverflowLevel* b) {
      if (a->bin != b->bin) return a->bin < b->bin;
      return a->base < b->base;
    });
    for (const auto* lvl : sorted) {
      per_block[static_cast<std::size_t>((lvl->bin - 1) / block)].push_back(lvl);
    }
    for (std::int64_t k = 0; k < num_blocks; ++k) {
      auto& levels = per_block[static_cast<std::size_t>(k)];
      if (levels.empty()) continue;
      std::int64_t after;
      if (k == 0) {
        after = std::min<std::int64_t>(first_pos, std::min<std::int64_t>(block, m));
      } else {
        after = k * block;
      }
      fresh.push_back({after, k, std::move(levels)});
    }
  }
  std::stable_sort(fresh.begin(), fresh.end(), [](const NewBin& a, const NewBin& b) {
    return a.after < b.after;
  });

  std::vector<int> shifted(static_cast<std::size_t>(m) + 1, 0);
  {
    std::size_t before = 0;
    for (int bin = 1; bin <= m; ++bin) {
      while (before < fresh.size() && fresh[before].after < bin) ++before;
      shifted[static_cast<std::size_t>(bin)] = bin + static_cast<int>(before);
    }
  }

  Packing out;
  for (const auto& pl : q.in_bin.placements()) {
    Placement np = pl;
    np.bin = shifted[static_cast<std::size_t>(pl.bin)];
    out.add(std::move(np));
  }
  for (std::size_t r = 0; r < fresh.size(); ++r) {
    const int index = static_cast<int>(fresh[r].after + static_cast<std::int64_t>(r) + 1);
    Rational y;
    for (const auto* lvl : fresh[r].levels) {
      for (const auto& [id, x] : lvl->items) out.add({id, index, x, y});
      y += lvl->height;
    }
    if (y > Rational(1)) {
      throw InvariantFailure("feasibilize: block " + std::to_string(fresh[r].block + 1) +
                             " overflow height " + y.str() + " exceeds one bin");
    }
  }
  return out;
}

}  // namespace sqpack
