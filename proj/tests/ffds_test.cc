#include "sqpack/ffds.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.h"
#include "sqpack/errors.h"
#include "sqpack/exact.h"
#include "sqpack/instance.h"

namespace sqpack {
namespace {

Instance decimal_instance(const std::vector<const char*>& sizes) {
  std::vector<Rational> v;
  for (const char* s : sizes) v.push_back(Rational::parse(s));
  return Instance::from_sizes(v);
}

std::vector<std::vector<Rational>> bin_sizes(const Packing& p, const Instance& inst) {
  std::vector<std::vector<Rational>> out;
  const auto bins = p.bins();
  for (std::size_t j = 1; j < bins.size(); ++j) {
    std::vector<Rational> s;
    for (int id : bins[j]) s.push_back(inst.item(id).size);
    std::sort(s.rbegin(), s.rend());
    out.push_back(s);
  }
  return out;
}

TEST(Corner, Positions) {
  const Rational s(2, 5);
  EXPECT_EQ(corner_position(Corner::kBottomLeft, s), std::make_pair(Rational(0), Rational(0)));
  EXPECT_EQ(corner_position(Corner::kBottomRight, s), std::make_pair(Rational(3, 5), Rational(0)));
  EXPECT_EQ(corner_position(Corner::kTopLeft, s), std::make_pair(Rational(0), Rational(3, 5)));
  EXPECT_EQ(corner_position(Corner::kTopRight, s),
            std::make_pair(Rational(3, 5), Rational(3, 5)));
}

// Hand execution: big items 0.55 and 0.6 open bins 1 and 2. The first 0.45
// fits beside 0.55 (bin 1 takes three 0.45s), the last 0.45 fits neither big
// bin and opens bin 3 with the three 0.4s.
TEST(Ffds, MixedExample) {
  const Instance inst =
      decimal_instance({"0.6", "0.55", "0.4", "0.4", "0.4", "0.45", "0.45", "0.45", "0.45"});
  const Packing p = ffds(inst.items());
  EXPECT_TRUE(validate(p, inst).empty());
  const auto r = [](const char* s) { return Rational::parse(s); };
  const auto got = bin_sizes(p, inst);
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0], (std::vector<Rational>{r("0.55"), r("0.45"), r("0.45"), r("0.45")}));
  EXPECT_EQ(got[1], (std::vector<Rational>{r("0.6")}));
  EXPECT_EQ(got[2], (std::vector<Rational>{r("0.45"), r("0.4"), r("0.4"), r("0.4")}));
}

TEST(Ffds, FourHalvesTile) {
  const Instance inst = Instance::from_sizes(std::vector<Rational>(4, Rational(1, 2)));
  const Packing p = ffds(inst.items());
  EXPECT_EQ(p.bin_count(), 1);
  EXPECT_TRUE(validate(p, inst).empty());
}

TEST(Ffds, TwoLargeItemsNeedTwoBins) {
  const Instance inst = decimal_instance({"0.51", "0.52"});
  EXPECT_EQ(ffds(inst.items()).bin_count(), 2);
}

TEST(Ffds, RejectsSmallItems) {
  const Instance inst = Instance::from_sizes({Rational(1, 3)});
  EXPECT_THROW(ffds(inst.items()), InvalidArgument);
  EXPECT_THROW(ffds_minsum(inst.items()), InvalidArgument);
}

TEST(FfdsMinsum, ReordersByCount) {
  const Instance inst = decimal_instance({"0.5", "0.5", "0.5", "0.5", "0.9"});
  const Packing p = ffds_minsum(inst.items());
  EXPECT_EQ(p.counts(), (std::vector<int>{4, 1}));
  EXPECT_EQ(cost(p), 6);
  EXPECT_EQ(cost(ffds_minsum(decimal_instance({"0.7"}).items())), 1);
}

TEST(FfdsMinsum, StructureAndDeterminism) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorSpec spec;
    spec.family = Family::kCornerMix;
    spec.n = static_cast<int>(1 + seed % 40);
    spec.seed = seed;
    const Instance inst = generate(spec);
    const Packing p = ffds_minsum(inst.items());
    ASSERT_TRUE(validate(p, inst).empty()) << seed;
    EXPECT_EQ(p, ffds_minsum(inst.items()));
    for (const auto& ids : p.bins()) {
      EXPECT_LE(ids.size(), 4u);
      EXPECT_LE(std::count_if(ids.begin(), ids.end(),
                              [&](int id) { return inst.item(id).size > Rational(1, 2); }),
                1);
    }
  }
}

// Optimality on small instances against the unpruned enumeration.
TEST(FfdsMinsum, MatchesBruteForceOnFiveItems) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorSpec spec;
    spec.family = seed % 2 ? Family::kCornerMix : Family::kUniform;
    spec.n = 5;
    spec.lo = Rational(1, 3);
    spec.hi = Rational(1);
    spec.seed = seed;
    const Instance inst = generate(spec);
    std::vector<Rational> sizes;
    for (const Item& it : inst.items()) sizes.push_back(it.size);
    const auto brute = oracle::brute_force_min_sum(
        sizes, [](const std::vector<Rational>& s) { return fits_in_unit_bin(s).feasible; });
    EXPECT_EQ(cost(ffds_minsum(inst.items())), brute) << seed;
  }
}

}  // namespace
}  // namespace sqpack
