#include "sqpack/model.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.h"
#include "sqpack/errors.h"
#include "sqpack/ffds.h"
#include "sqpack/instance.h"
#include "sqpack/shelves.h"

namespace sqpack {
namespace {

bool has_kind(const std::vector<Violation>& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

Packing counts_packing(const std::vector<int>& counts) {
  // Bin j holds counts[j-1] items of size 1/4 in a grid.
  Packing p;
  int id = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    for (int k = 0; k < counts[j]; ++k) {
      p.add({id++, static_cast<int>(j) + 1, Rational(k % 4, 4), Rational(k / 4, 4)});
    }
  }
  return p;
}

TEST(Instance, RejectsBadIdsAndSizes) {
  EXPECT_THROW(Instance({{1, Rational(1, 2)}}), InvalidArgument);
  EXPECT_THROW(Instance({{0, Rational(0)}}), InvalidArgument);
  EXPECT_THROW(Instance({{0, Rational(3, 2)}}), InvalidArgument);
  EXPECT_THROW(Instance({{0, Rational(1, 2)}, {0, Rational(1, 2)}}), InvalidArgument);
  const auto inst = Instance::from_sizes({Rational(1, 2), Rational(1)});
  EXPECT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.total_area(), Rational(5, 4));
}

TEST(Cost, SmallCases) {
  EXPECT_EQ(cost(Packing{}), 0);
  EXPECT_EQ(cost(counts_packing({5})), 5);
  EXPECT_EQ(cost(counts_packing({2, 5, 3})), 2 + 10 + 9);
}

TEST(Validate, AcceptsGridAndTouchingSquares) {
  const auto inst = Instance::from_sizes(std::vector<Rational>(16, Rational(1, 4)));
  EXPECT_TRUE(validate(counts_packing({16}), inst).empty());
}

TEST(Validate, IdenticalPlacementOverlaps) {
  const auto inst = Instance::from_sizes({Rational(1), Rational(1)});
  Packing p;
  p.add({0, 1, Rational(0), Rational(0)});
  p.add({1, 1, Rational(0), Rational(0)});
  const auto v = validate(p, inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kOverlap);
  EXPECT_EQ(v[0].items, (std::vector<int>{0, 1}));
}

TEST(Validate, Containment) {
  const auto inst = Instance::from_sizes({Rational(3, 4)});
  Packing p;
  p.add({0, 1, Rational(1, 2), Rational(0)});
  EXPECT_TRUE(has_kind(validate(p, inst), ViolationKind::kOutOfBin));
}

TEST(Validate, StructuralViolations) {
  const auto inst = Instance::from_sizes({Rational(1, 2), Rational(1, 2)});
  Packing missing;
  missing.add({0, 1, Rational(0), Rational(0)});
  EXPECT_TRUE(has_kind(validate(missing, inst), ViolationKind::kMissingItem));

  Packing dup = missing;
  dup.add({0, 1, Rational(1, 2), Rational(0)});
  dup.add({1, 1, Rational(0), Rational(1, 2)});
  EXPECT_TRUE(has_kind(validate(dup, inst), ViolationKind::kDuplicateItem));

  Packing unknown = missing;
  unknown.add({1, 1, Rational(1, 2), Rational(0)});
  unknown.add({7, 1, Rational(0), Rational(1, 2)});
  EXPECT_TRUE(has_kind(validate(unknown, inst), ViolationKind::kUnknownItem));

  Packing gap;
  gap.add({0, 1, Rational(0), Rational(0)});
  gap.add({1, 3, Rational(0), Rational(0)});
  EXPECT_TRUE(has_kind(validate(gap, inst), ViolationKind::kEmptyBinGap));

  Packing bad_bin;
  bad_bin.add({0, 0, Rational(0), Rational(0)});
  bad_bin.add({1, 1, Rational(0), Rational(0)});
  EXPECT_TRUE(has_kind(validate(bad_bin, inst), ViolationKind::kBadBin));
}

// Mutation test: perturb feasible packings produced by the algorithms and
// compare the validator with the plain pairwise oracle.
TEST(Validate, MutationsAgreeWithPairwiseOracle) {
  SplitMix64 rng(2024);
  int caught = 0;
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorSpec spec;
    spec.family = Family::kUniform;
    spec.n = static_cast<int>(rng.uniform(2, 25));
    spec.lo = Rational(1, 1000000);
    spec.hi = Rational(1, 2);
    spec.seed = rng.next();
    const Instance inst = generate(spec);
    Packing p = trial % 2 ? nfdh(inst.items()) : ffdh(inst.items());
    ASSERT_TRUE(validate(p, inst).empty());

    auto& pls = p.mutable_placements();
    auto& victim = pls[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pls.size()) - 1))];
    const auto step = Rational(static_cast<long>(rng.uniform(-300, 300)), 1000);
    if (rng.uniform(0, 1)) {
      victim.x += step;
    } else {
      victim.y += step;
    }

    const SizeTable sizes = inst.size_table();
    bool oracle_ok = true;
    for (const auto& bin_ids : p.bins()) {
      std::vector<Rational> s, xs, ys;
      for (int id : bin_ids) {
        const auto it = std::find_if(pls.begin(), pls.end(),
                                     [&](const Placement& q) { return q.item_id == id; });
        s.push_back(sizes[static_cast<std::size_t>(id)]);
        xs.push_back(it->x);
        ys.push_back(it->y);
      }
      oracle_ok = oracle_ok && oracle::bin_is_feasible(s, xs, ys);
    }
    const bool ok = validate(p, inst).empty();
    EXPECT_EQ(ok, oracle_ok) << "trial " << trial;
    if (!ok) ++caught;
  }
  EXPECT_GT(caught, 50);
}

TEST(Reorder, SortsCountsStably) {
  const Packing p = counts_packing({2, 5, 3});
  const Packing r = reorder_bins_by_count(p);
  EXPECT_EQ(r.counts(), (std::vector<int>{5, 3, 2}));
  EXPECT_EQ(reorder_bins_by_count(r), r);
  // Ties keep their original order.
  const Packing t = reorder_bins_by_count(counts_packing({1, 3, 1}));
  EXPECT_EQ(t.bins()[2], (std::vector<int>{0}));
  EXPECT_EQ(t.bins()[3], (std::vector<int>{4}));
}

TEST(Reorder, NoPermutationIsCheaper) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> counts(static_cast<std::size_t>(rng.uniform(1, 6)));
    for (auto& c : counts) c = static_cast<int>(rng.uniform(1, 16));
    const Packing p = counts_packing(counts);
    const std::int64_t sorted_cost = cost(reorder_bins_by_count(p));
    EXPECT_LE(sorted_cost, cost(p));
    std::vector<int> perm = counts;
    std::sort(perm.begin(), perm.end());
    do {
      std::int64_t c = 0;
      for (std::size_t j = 0; j < perm.size(); ++j) c += static_cast<std::int64_t>(j + 1) * perm[j];
      EXPECT_LE(sorted_cost, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

// NFDH counts (1, 1, 5, 5) become (5, 5, 1, 1). In general the large-item
// bin that also takes t+1 small items holds t+2 items, which gives
// 3t^2/2 + 5t/2 + 1.
TEST(Reorder, AdversarialNfdh) {
  const Packing p = reorder_bins_by_count(nfdh(gen_adversarial(3).items()));
  EXPECT_EQ(cost(p), 22);
  for (int t = 4; t <= 8; ++t) {
    EXPECT_EQ(2 * cost(reorder_bins_by_count(nfdh(gen_adversarial(t).items()))),
              3 * t * t + 5 * t + 2)
        << t;
  }
  EXPECT_TRUE(validate(p, gen_adversarial(3)).empty());
}

TEST(ShiftBins, Linearity) {
  const Packing p = counts_packing({4, 2, 1});
  EXPECT_EQ(shift_bins(p, 0), p);
  EXPECT_EQ(cost(shift_bins(p, 3)), cost(p) + 21);
  SplitMix64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int d = static_cast<int>(rng.uniform(0, 40));
    EXPECT_EQ(cost(shift_bins(p, d)) - cost(p), static_cast<std::int64_t>(d) * 7);
  }
  EXPECT_THROW(shift_bins(p, -1), InvalidArgument);
}

TEST(ShiftBins, FfdsObservation) {
  // ffds(d) = (k+b)d + ffds(0) for any medium/large set.
  GeneratorSpec spec;
  spec.family = Family::kCornerMix;
  spec.n = 30;
  spec.seed = 9;
  const Instance inst = generate(spec);
  const Packing p = ffds_minsum(inst.items());
  for (int d : {0, 1, 5, 12}) {
    EXPECT_EQ(cost(shift_bins(p, d)), cost(p) + 30 * d);
  }
}

TEST(OccupiedArea, Values) {
  const auto inst = Instance::from_sizes(std::vector<Rational>(5, Rational(1, 2)));
  Packing p;
  p.add({0, 1, Rational(0), Rational(0)});
  for (int k = 1; k < 5; ++k) {
    p.add({k, 2, Rational((k - 1) % 2, 2), Rational((k - 1) / 2, 2)});
  }
  const SizeTable sizes = inst.size_table();
  EXPECT_EQ(occupied_area(p, sizes, 1), Rational(1, 4));
  EXPECT_EQ(occupied_area(p, sizes, 2), Rational(1));
  EXPECT_THROW(occupied_area(p, sizes, 3), InvalidArgument);
  EXPECT_THROW(occupied_area(p, sizes, 0), InvalidArgument);
}

TEST(Concat, ReindexesSuffix) {
  const Packing prefix = counts_packing({3, 1});
  Packing suffix;
  for (int k = 0; k < 4; ++k) suffix.add({10 + k, 1, Rational(k % 2, 2), Rational(k / 2, 2)});
  const Packing joined = concat(prefix, suffix);
  EXPECT_EQ(cost(joined), cost(prefix) + 4 * 3);
  EXPECT_EQ(concat(Packing{}, suffix), suffix);
  EXPECT_THROW(concat(prefix, prefix), InvalidArgument);
}

TEST(CompactBins, RemovesGaps) {
  Packing p;
  p.add({0, 2, Rational(0), Rational(0)});
  p.add({1, 5, Rational(0), Rational(0)});
  const Packing c = compact_bins(p);
  EXPECT_EQ(c.bin_count(), 2);
  EXPECT_EQ(cost(c), 3);
}

TEST(RelaxedPacking, CostCountsOverflowAtBinIndex) {
  RelaxedPacking q;
  q.in_bin.add({0, 1, Rational(0), Rational(0)});
  q.in_bin.add({1, 2, Rational(0), Rational(0)});
  OverflowLevel lvl;
  lvl.bin = 2;
  lvl.height = Rational(1, 10);
  lvl.items = {{2, Rational(0)}, {3, Rational(1, 10)}};
  q.overflow.push_back(lvl);
  EXPECT_EQ(cost(q), 1 + 2 + 2 + 2);
  EXPECT_EQ(q.item_count(), 4u);
  EXPECT_EQ(q.bin_count(), 2);
}

}  // namespace
}  // namespace sqpack
