#pragma once

#include <cstdint>
#include <vector>

#include "sqpack/model.h"

namespace sqpack {

// small: size <= 1/3, medium: 1/3 < size <= 1/2, large: size > 1/2.
enum class SizeClass { kSmall, kMedium, kLarge };

SizeClass size_class(const Rational& size);

struct Classification {
  std::vector<int> small;
  std::vector<int> medium;
  std::vector<int> large;
};

Classification classify(const Instance& inst);

// Greedy grouping of the items in non-decreasing size order (ties by id):
// each group takes items until its area exceeds 1; the last group may stop
// short.
struct GroupPartition {
  std::vector<std::vector<int>> groups;
  // Leading groups made only of small items whose area exceeds 1.
  int r = 0;
  // Small items of group r+1 (empty if that group does not exist).
  std::vector<int> small_tail;
  // sum_{i<=r} i|G_i| + (r+1)|small_tail|
  std::int64_t R = 0;

  int q() const { return static_cast<int>(groups.size()); }
};

GroupPartition build_groups(const Instance& inst);

// sum_i i|G_i|; a lower bound on the optimum.
std::int64_t lb1(const GroupPartition& gp);

// R + ffds_minsum cost of the medium and large items; a lower bound on the
// optimum.
std::int64_t lb2(const GroupPartition& gp, const Instance& inst);

// k: medium items plus large items sharing an FFDS bin with a medium item.
// b: large items alone in their FFDS bin.
struct KbStats {
  int k = 0;
  int b = 0;
};

KbStats kb_stats(const Instance& inst);

// R + rk - 13r + k^2/18 - 17k/18 + rb + kb/9 - 3b/2 + 4 + b^2/8, the
// closed-form lower estimate of lb1 used by the 53/22 analysis.
Rational refined_lb1_rhs(std::int64_t R, std::int64_t r, std::int64_t k, std::int64_t b);

// Case thresholds of the 53/22 analysis. The test suite re-derives every
// value from the residual polynomials with exact rationals.
struct CaseConstants {
  std::int64_t k_limit;
  std::int64_t b_limit;
  std::int64_t r_limit;
  std::int64_t s_limit;
  std::int64_t n_limit;
  std::int64_t c_limit;
};

inline constexpr CaseConstants kCaseConstants{
    .k_limit = 208,
    .b_limit = 102,
    .r_limit = 231,
    .s_limit = 266420,
    .n_limit = 266420 + 208 + 102,
    .c_limit = 27769,
};

// Everything the bound computations produce for one instance.
struct BoundsSummary {
  GroupPartition groups;
  std::int64_t lb1 = 0;
  std::int64_t lb2 = 0;
  std::int64_t ffds0 = 0;  // cost of ffds_minsum on medium + large items
  KbStats kb;
  Rational refined_rhs;
  std::size_t small = 0;
  std::size_t medium = 0;
  std::size_t large = 0;
};

BoundsSummary compute_bounds(const Instance& inst);

}  // namespace sqpack
