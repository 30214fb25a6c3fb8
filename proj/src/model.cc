#include "sqpack/model.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "sqpack/errors.h"

namespace sqpack {

Instance::Instance(std::vector<Item> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.id != static_cast<int>(i)) {
      throw InvalidArgument("instance ids must be 0..n-1 in order; found id " +
                            std::to_string(it.id) + " at position " +
                            std::to_string(i));
    }
    if (it.size <= Rational(0) || it.size > Rational(1)) {
      throw InvalidArgument("item " + std::to_string(it.id) + " has size " +
                            it.size.str() + " outside (0,1]");
    }
  }
}

Instance Instance::from_sizes(std::vector<Rational> sizes) {
  std::vector<Item> items;
  items.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    items.push_back({static_cast<int>(i), std::move(sizes[i])});
  }
  return Instance(std::move(items));
}

SizeTable Instance::size_table() const {
  SizeTable t;
  t.reserve(items_.size());
  for (const auto& it : items_) t.push_back(it.size);
  return t;
}

Rational Instance::total_area() const {
  Rational a;
  for (const auto& it : items_) a += it.size * it.size;
  return a;
}

std::vector<Item> Instance::subset(std::span<const int> ids) const {
  std::vector<Item> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(item(id));
  return out;
}

int Packing::bin_count() const {
  int m = 0;
  for (const auto& p : placements_) m = std::max(m, p.bin);
  return m;
}

std::vector<std::vector<int>> Packing::bins() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(bin_count()) + 1);
  for (const auto& p : placements_) {
    if (p.bin >= 1) out[static_cast<std::size_t>(p.bin)].push_back(p.item_id);
  }
  return out;
}

std::vector<int> Packing::counts() const {
  std::vector<int> c(static_cast<std::size_t>(bin_count()), 0);
  for (const auto& p : placements_) {
    if (p.bin >= 1) ++c[static_cast<std::size_t>(p.bin - 1)];
  }
  return c;
}

Packing Packing::canonical() const {
  auto ps = placements_;
  std::stable_sort(ps.begin(), ps.end(), [](const Placement& a, const Placement& b) {
    return a.item_id < b.item_id;
  });
  return Packing(std::move(ps));
}

int RelaxedPacking::bin_count() const {
  int m = in_bin.bin_count();
  for (const auto& lvl : overflow) m = std::max(m, lvl.bin);
  return m;
}

std::size_t RelaxedPacking::item_count() const {
  std::size_t n = in_bin.item_count();
  for (const auto& lvl : overflow) n += lvl.items.size();
  return n;
}

std::int64_t cost(const Packing& p) {
  std::int64_t c = 0;
  for (const auto& pl : p.placements()) c += pl.bin;
  return c;
}

std::int64_t cost(const RelaxedPacking& p) {
  std::int64_t c = cost(p.in_bin);
  for (const auto& lvl : p.overflow) {
    c += static_cast<std::int64_t>(lvl.bin) * static_cast<std::int64_t>(lvl.items.size());
  }
  return c;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownItem: return "unknown-item";
    case ViolationKind::kMissingItem: return "missing-item";
    case ViolationKind::kDuplicateItem: return "duplicate-item";
    case ViolationKind::kBadBin: return "bad-bin";
    case ViolationKind::kOutOfBin: return "out-of-bin";
    case ViolationKind::kOverlap: return "overlap";
    case ViolationKind::kEmptyBinGap: return "empty-bin-gap";
  }
  return "unknown";
}

std::vector<Violation> validate(const Packing& p, const SizeTable& sizes,
                                std::span<const int> expected) {
  std::vector<Violation> out;
  const int n = static_cast<int>(sizes.size());
  std::vector<char> wanted(sizes.size(), 0);
  for (int id : expected) {
    if (id >= 0 && id < n) wanted[static_cast<std::size_t>(id)] = 1;
  }
  std::vector<int> seen(sizes.size(), 0);
  const Rational one(1);

  // Per-bin indices of placements that passed the structural checks.
  std::map<int, std::vector<std::size_t>> by_bin;
  const auto& ps = p.placements();
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Placement& pl = ps[k];
    const std::string tag = "item " + std::to_string(pl.item_id);
    if (pl.item_id < 0 || pl.item_id >= n || !wanted[static_cast<std::size_t>(pl.item_id)]) {
      out.push_back({ViolationKind::kUnknownItem, {pl.item_id}, pl.bin,
                     tag + " is not part of the instance"});
      continue;
    }
    if (++seen[static_cast<std::size_t>(pl.item_id)] > 1) {
      out.push_back({ViolationKind::kDuplicateItem, {pl.item_id}, pl.bin,
                     tag + " is placed more than once"});
      continue;
    }
    if (pl.bin < 1) {
      out.push_back({ViolationKind::kBadBin, {pl.item_id}, pl.bin,
                     tag + " has bin index " + std::to_string(pl.bin) + " < 1"});
      continue;
    }
    const Rational& s = sizes[static_cast<std::size_t>(pl.item_id)];
    if (pl.x.sign() < 0 || pl.y.sign() < 0 || pl.x + s > one || pl.y + s > one) {
      out.push_back({ViolationKind::kOutOfBin, {pl.item_id}, pl.bin,
                     tag + " at (" + pl.x.str() + ", " + pl.y.str() + ") with size " +
                         s.str() + " leaves bin " + std::to_string(pl.bin)});
      continue;
    }
    by_bin[pl.bin].push_back(k);
  }

  for (int id : expected) {
    if (id >= 0 && id < n && seen[static_cast<std::size_t>(id)] == 0) {
      out.push_back({ViolationKind::kMissingItem, {id}, 0,
                     "item " + std::to_string(id) + " is not placed"});
    }
  }

  // Sweep by x: a pair can only overlap if the later one starts before the
  // earlier one ends. Interiors are open, so touching edges are fine.
  for (auto& [bin, idx] : by_bin) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return ps[a].x < ps[b].x;
    });
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const Placement& pa = ps[idx[a]];
      const Rational& sa = sizes[static_cast<std::size_t>(pa.item_id)];
      const Rational ax_end = pa.x + sa;
      const Rational ay_end = pa.y + sa;
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const Placement& pb = ps[idx[b]];
        if (pb.x >= ax_end) break;
        const Rational& sb = sizes[static_cast<std::size_t>(pb.item_id)];
        if (pb.y < ay_end && pa.y < pb.y + sb) {
          const int lo = std::min(pa.item_id, pb.item_id);
          const int hi = std::max(pa.item_id, pb.item_id);
          out.push_back({ViolationKind::kOverlap, {lo, hi}, bin,
                         "items " + std::to_string(lo) + " and " + std::to_string(hi) +
                             " overlap in bin " + std::to_string(bin)});
        }
      }
    }
  }

  const int m = p.bin_count();
  for (int j = 1; j <= m; ++j) {
    if (!by_bin.contains(j)) {
      out.push_back({ViolationKind::kEmptyBinGap, {}, j,
                     "bin " + std::to_string(j) + " is empty but bin " +
                         std::to_string(m) + " is used"});
    }
  }
  return out;
}

std::vector<Violation> validate(const Packing& p, const Instance& inst) {
  std::vector<int> ids(inst.size());
  std::iota(ids.begin(), ids.end(), 0);
  return validate(p, inst.size_table(), ids);
}

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations) os << to_string(v.kind) << ": " << v.message << "\n";
  return os.str();
}

Packing reorder_bins_by_count(const Packing& p) {
  const auto counts = p.counts();
  std::vector<int> order(counts.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a - 1)] > counts[static_cast<std::size_t>(b - 1)];
  });
  std::vector<int> new_index(counts.size() + 1, 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    new_index[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
  }
  Packing out = p;
  for (auto& pl : out.mutable_placements()) pl.bin = new_index[static_cast<std::size_t>(pl.bin)];
  return out;
}

Packing shift_bins(const Packing& p, int d) {
  if (d < 0) throw InvalidArgument("shift_bins requires d >= 0");
  Packing out = p;
  for (auto& pl : out.mutable_placements()) pl.bin += d;
  return out;
}

Rational occupied_area(const Packing& p, const SizeTable& sizes, int bin) {
  if (bin < 1 || bin > p.bin_count()) {
    throw InvalidArgument("unknown bin index " + std::to_string(bin));
  }
  Rational a;
  for (const auto& pl : p.placements()) {
    if (pl.bin == bin) {
      const Rational& s = sizes.at(static_cast<std::size_t>(pl.item_id));
      a += s * s;
    }
  }
  return a;
}

Packing concat(const Packing& prefix, const Packing& suffix) {
  std::set<int> ids;
  for (const auto& pl : prefix.placements()) ids.insert(pl.item_id);
  for (const auto& pl : suffix.placements()) {
    if (ids.contains(pl.item_id)) {
      throw InvalidArgument("concat: item " + std::to_string(pl.item_id) +
                            " appears in both packings");
    }
  }
  Packing out = prefix;
  const int m = prefix.bin_count();
  for (const auto& pl : suffix.placements()) {
    Placement q = pl;
    q.bin += m;
    out.add(std::move(q));
  }
  return out;
}

Packing compact_bins(const Packing& p) {
  std::set<int> used;
  for (const auto& pl : p.placements()) used.insert(pl.bin);
  std::map<int, int> remap;
  int next = 1;
  for (int b : used) remap[b] = next++;
  Packing out = p;
  for (auto& pl : out.mutable_placements()) pl.bin = remap[pl.bin];
  return out;
}

}  // namespace sqpack
