#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqpack/rational.h"

namespace sqpack {

// A square item. Ids are 0-based and unique within an instance.
struct Item {
  int id = 0;
  Rational size;
};

// Item sizes indexed by item id.
using SizeTable = std::vector<Rational>;

// An ordered list of items whose ids are exactly 0..n-1 and whose sizes lie
// in (0, 1].
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Item> items);

  // Builds items with ids 0..n-1 in the given order.
  static Instance from_sizes(std::vector<Rational> sizes);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(int id) const { return items_.at(static_cast<std::size_t>(id)); }
  SizeTable size_table() const;
  Rational total_area() const;

  // Items with the given ids, in the given order.
  std::vector<Item> subset(std::span<const int> ids) const;

 private:
  std::vector<Item> items_;
};

// Lower-left corner of an item inside a 1-based bin.
struct Placement {
  int item_id = 0;
  int bin = 1;
  Rational x;
  Rational y;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// An assignment of items to positions in bins 1..m. Holds no sizes; geometric
// checks take a SizeTable.
class Packing {
 public:
  Packing() = default;
  explicit Packing(std::vector<Placement> placements)
      : placements_(std::move(placements)) {}

  void add(Placement p) { placements_.push_back(std::move(p)); }
  const std::vector<Placement>& placements() const { return placements_; }
  std::vector<Placement>& mutable_placements() { return placements_; }
  std::size_t item_count() const { return placements_.size(); }
  bool empty() const { return placements_.empty(); }

  // Highest bin index in use (0 for the empty packing).
  int bin_count() const;
  // Item ids per bin; index 0 is unused so that result[j] is bin j.
  std::vector<std::vector<int>> bins() const;
  // |B_j| for j = 1..m, stored at index j-1.
  std::vector<int> counts() const;
  // Placements sorted by item id.
  Packing canonical() const;

  friend bool operator==(const Packing&, const Packing&) = default;

 private:
  std::vector<Placement> placements_;
};

// One level stacked above the top edge of a bin. Items keep their x offset;
// their y is the level's base above the bin top.
struct OverflowLevel {
  int bin = 1;
  Rational base;    // height of the level's floor above the bin top
  Rational height;  // size of the last (largest) item in the level
  std::vector<std::pair<int, Rational>> items;  // (item id, x)
};

// Packing that may stack up to four overflow levels above each bin. Items in
// an overflow level cost the index of the bin underneath them.
struct RelaxedPacking {
  static constexpr int kMaxOverflowLevels = 4;

  Packing in_bin;
  std::vector<OverflowLevel> overflow;

  int bin_count() const;
  std::size_t item_count() const;
};

std::int64_t cost(const Packing& p);
std::int64_t cost(const RelaxedPacking& p);

enum class ViolationKind {
  kUnknownItem,
  kMissingItem,
  kDuplicateItem,
  kBadBin,
  kOutOfBin,
  kOverlap,
  kEmptyBinGap,
};

struct Violation {
  ViolationKind kind;
  std::vector<int> items;
  int bin = 0;
  std::string message;
};

std::string to_string(ViolationKind kind);

// Checks containment, pairwise interior disjointness, that every item of
// `expected` is placed exactly once and nothing else is, and that bins
// 1..m are all non-empty. An empty result means the packing is feasible.
std::vector<Violation> validate(const Packing& p, const SizeTable& sizes,
                                std::span<const int> expected);
std::vector<Violation> validate(const Packing& p, const Instance& inst);

// Joins violation messages one per line.
std::string describe(const std::vector<Violation>& violations);

// Permutes bins so |B_1| >= |B_2| >= ...; ties keep the original bin order.
Packing reorder_bins_by_count(const Packing& p);

// Adds d to every bin index.
Packing shift_bins(const Packing& p, int d);

// Exact sum of size^2 over the items in `bin`. Throws InvalidArgument when
// the bin index is outside 1..m.
Rational occupied_area(const Packing& p, const SizeTable& sizes, int bin);

// Places `suffix` after the bins of `prefix`. Throws InvalidArgument if the
// two packings share an item.
Packing concat(const Packing& prefix, const Packing& suffix);

// Renumbers bins so that the used bin indices become 1..k, keeping order.
Packing compact_bins(const Packing& p);

}  // namespace sqpack
