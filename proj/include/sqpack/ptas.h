#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqpack/exact.h"
#include "sqpack/model.h"

namespace sqpack {

enum class PtasMode { kStrict, kRelaxed };

std::string to_string(PtasMode mode);
PtasMode parse_mode(std::string_view name);

// Strict mode derives the size classes from eps. Relaxed mode takes them
// from small_threshold (S: size < small) and large_threshold (L: size >=
// large) so that every stage runs on desk-sized instances. Defaults are
// small = eps^4/2 and large = max(eps, 0.333334).
struct PtasParams {
  Rational eps{1, 4};
  PtasMode mode = PtasMode::kStrict;
  std::optional<Rational> small_threshold;
  std::optional<Rational> large_threshold;
  // Linear grouping fraction; eps^2 when unset.
  std::optional<Rational> gamma;
  // Limits for the configuration search of the rounded large items.
  SearchLimits limits{.max_items = 16, .node_budget = 20'000'000, .time_budget_seconds = 60};
  std::int64_t config_budget = 100'000;
  std::int64_t state_budget = 2'000'000;
  // Enumerate configurations even when FFDS alone is optimal.
  bool force_enumeration = false;
};

// Throws InvalidArgument unless 1/eps is an integer, eps <= 1/4, and the
// relaxed thresholds and gamma are consistent.
void check_params(const PtasParams& params);
Rational grouping_fraction(const PtasParams& params);

struct MediumSelection {
  int i = 0;
  int l = 0;
  std::int64_t p = 0;
  Rational large_threshold;  // L: size >= large_threshold
  Rational small_threshold;  // S: size < small_threshold
  std::vector<int> M;
  std::vector<int> S;
  std::vector<int> L;
};

// M_i = [eps^((3/eps)(i+1)), eps^((3/eps)i)) for i = 1..1/eps^3. Takes the
// smallest i with |M_i| <= eps^3 n, then the smallest l whose sub-window
// [eps^((3/eps)i+3(l+1)), eps^((3/eps)i+3l)) has area <= eps*area(I).
MediumSelection select_medium(const Instance& inst, const Rational& eps);

// Partition by explicit thresholds (relaxed mode); i = l = p = 0.
MediumSelection classify_by_thresholds(const Instance& inst, const Rational& small,
                                       const Rational& large);

struct LinearGrouping {
  std::vector<int> L1;            // discarded, largest first
  std::vector<Item> rounded;      // remaining items with rounded sizes
  std::vector<int> group_of;      // group index (1-based) per entry of rounded
  std::vector<std::size_t> group_sizes;  // |L_1|, |L_2|, ...
};

// Sorts L non-increasingly and cuts it into 1/gamma groups, the first ones
// of size ceil(gamma|L|) and the rest one smaller; L_1 is discarded and the
// others are rounded up to their group's largest size.
LinearGrouping linear_group_large(std::span<const Item> L, const Rational& gamma);

// Min-sum optimal packing of squares with few distinct sizes. Feasible bin
// configurations are enumerated with fits_in_unit_bin; a memoized search
// over the remaining count vector then picks one configuration per bin,
// restricted to configurations that cannot take another remaining item.
// When every size exceeds 1/3 the FFDS packing is already optimal and is
// returned unless force_enumeration is set. Throws BudgetExceeded, or
// StrictModeInfeasible in strict mode, when the enumeration runs past the
// limits in params.
Packing optimal_pack_rounded(std::span<const Item> rounded, const PtasParams& params);

enum class MergeCase { kGrid, kAppend };

struct MergeResult {
  Packing packing;
  MergeCase merge_case = MergeCase::kAppend;
  int relocated = 0;          // large items moved out of bin 1 (grid case)
  int relocation_bin = 0;     // index of the bin that received them
  std::int64_t small_relaxed_cost = 0;  // NFIH cost before feasibilization
  std::int64_t small_cost = 0;          // after feasibilization
  int small_bins = 0;
};

// Joins the small items S with the packing pL of the rounded large items.
//
// Grid case (|S| < |B_1|/eps^3): the large items of bin 1 are taken largest
// first and the small items are laid on a grid of cells of side
// small_threshold inside them; each covered large item moves to one new bin
// opened at index min(1/eps, m+1). Append case: NFIH and feasibilize pack S,
// then pL follows. `sizes` must hold the (rounded) size of every item.
//
// In relaxed mode the grid case is used only when the grid has room;
// otherwise the append case is taken. In strict mode a full grid throws
// InvariantFailure.
MergeResult merge_small_large(const Packing& pL, std::span<const Item> S, const SizeTable& sizes,
                              const PtasParams& params, const Rational& small_threshold);

// Opens one bin per discarded item. The j-th goes right after original bin
// max(j*ceil(1/eps), ceil(j*m/|L1|)), or at the end if that is past the
// last bin.
Packing reinstate_L1(const Packing& p, std::span<const int> L1, const Rational& eps);

// NFDH-packs M; for k = 1..1/eps up to four of these bins go right after
// original bin k/eps, the rest at the end. Bins that M does not need are
// not opened.
Packing insert_medium(const Packing& p, std::span<const Item> M, const Rational& eps);

struct StageRow {
  std::string name;
  std::int64_t cost_before = 0;
  std::int64_t cost_after = 0;
  Rational inflation;  // cost_after / cost_before, 0 when cost_before = 0
  Rational bound;      // claimed factor
  bool asserted = false;
};

struct StageReport {
  std::vector<StageRow> rows;
  MediumSelection selection;
  MergeCase merge_case = MergeCase::kAppend;

  const StageRow* find(std::string_view name) const;
  // One line per stage; header kStageCsvHeader.
  std::string csv(std::string_view instance_id) const;
};

inline constexpr const char* kStageCsvHeader =
    "instance_id,stage,cost_before,cost_after,inflation,bound,premises";

struct PtasResult {
  Packing packing;
  StageReport report;
};

// The five steps: classify, round and pack the large items, merge the small
// ones, reinstate the discarded large items (at their original sizes), and
// insert the medium items. Strict mode requires n >= 1/eps^3.
PtasResult ptas_solve(const Instance& inst, const PtasParams& params);

}  // namespace sqpack
