#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqpack/bounds.h"
#include "sqpack/model.h"

namespace sqpack {

struct ApproxReport {
  std::int64_t cost = 0;
  std::int64_t lb1 = 0;
  std::int64_t lb2 = 0;
  std::int64_t R = 0;
  int r = 0;
  int k = 0;
  int b = 0;
  int small_bins = 0;
  std::int64_t ffds0 = 0;
  // 2R + ffds(2r+2) = 2R + ffds(0) + (k+b)(2r+2)
  std::int64_t upper_bound_2R_plus_ffds = 0;
  Rational ratio_vs_max_lb;
};

struct ApproxResult {
  Packing packing;
  ApproxReport report;
};

// The 53/22-approximation. Small items of G_1..G_r and of G_{r+1} are each
// packed by NFDH into fresh bins, group after group; the FFDS packing of the
// medium and large items, reordered by count, follows.
ApproxResult solve_53_22(const Instance& inst);

// Per-instance CSV rows comparing the approximation to its lower bounds and,
// when given, to the optimum.
struct RatioRow {
  std::string instance_id;
  std::size_t n = 0;
  std::int64_t cost = 0;
  std::int64_t lb1 = 0;
  std::int64_t lb2 = 0;
  std::optional<std::int64_t> opt;
  Rational ratio_vs_lb;
  std::optional<Rational> ratio_vs_opt;
};

struct RatioSuite {
  std::vector<RatioRow> rows;
  std::optional<Rational> max_ratio_vs_lb;
  std::optional<Rational> max_ratio_vs_opt;

  std::string csv() const;
};

inline constexpr const char* kRatioCsvHeader =
    "instance_id,n,cost,lb1,lb2,opt_or_blank,ratio_vs_lb,ratio_vs_opt_or_blank";

struct NamedInstance {
  std::string id;
  Instance instance;
};

// Runs solve_53_22 on every instance. With `exact_up_to` set, instances with
// at most that many items are also solved by exact_min_sum to fill the opt
// columns.
RatioSuite empirical_ratio_suite(std::span<const NamedInstance> corpus,
                                 std::optional<int> exact_up_to = std::nullopt);

// Fixed six-decimal rendering of a rational (deterministic, round half up).
std::string decimal(const Rational& r, int places = 6);

}  // namespace sqpack
