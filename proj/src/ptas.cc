#include "sqpack/ptas.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sqpack/approx.h"
#include "sqpack/bounds.h"
#include "sqpack/errors.h"
#include "sqpack/ffds.h"
#include "sqpack/shelves.h"

namespace sqpack {
namespace {

std::int64_t inverse_integer(const Rational& x, const char* what) {
  if (x.sign() <= 0 || x > Rational(1)) {
    throw InvalidArgument(std::string(what) + " must lie in (0,1], got " + x.str());
  }
  const Rational inv = Rational(1) / x;
  if (!inv.is_integer()) {
    throw InvalidArgument(std::string("1/") + what + " must be an integer, got " + x.str());
  }
  return inv.floor();
}

Rational area_of(const Instance& inst, std::span<const int> ids) {
  Rational a;
  for (int id : ids) a += inst.item(id).size * inst.item(id).size;
  return a;
}

Rational small_default(const Rational& eps) { return pow(eps, 4) / Rational(2); }

// Just above 1/3 on the 1/10^6 grid: every rounded large item then exceeds 1/3
// and step 2 is solved by FFDS instead of the configuration search, whose state
// space explodes on ordinary instances once sizes in (eps, 1/3] are large.
Rational large_default(const Rational& eps) { return max(eps, Rational(333334, 1000000)); }

}  // namespace

std::string to_string(PtasMode mode) { return mode == PtasMode::kStrict ? "strict" : "relaxed"; }

PtasMode parse_mode(std::string_view name) {
  if (name == "strict") return PtasMode::kStrict;
  if (name == "relaxed") return PtasMode::kRelaxed;
  throw InvalidArgument("unknown ptas mode '" + std::string(name) + "'");
}

Rational grouping_fraction(const PtasParams& params) {
  return params.gamma ? *params.gamma : params.eps * params.eps;
}

void check_params(const PtasParams& params) {
  inverse_integer(params.eps, "eps");
  if (params.eps > Rational(1, 4)) throw InvalidArgument("eps must be at most 1/4");
  inverse_integer(grouping_fraction(params), "gamma");
  if (params.mode == PtasMode::kRelaxed) {
    const Rational small = params.small_threshold.value_or(small_default(params.eps));
    const Rational large = params.large_threshold.value_or(large_default(params.eps));
    if (small.sign() <= 0 || small > large || large > Rational(1)) {
      throw InvalidArgument("relaxed thresholds need 0 < small <= large <= 1, got small = " +
                            small.str() + ", large = " + large.str());
    }
    if (small > Rational(1, 4)) {
      throw InvalidArgument("small threshold must be at most 1/4, got " + small.str());
    }
  } else if (params.small_threshold || params.large_threshold) {
    throw InvalidArgument("size thresholds can only be set in relaxed mode");
  }
}

MediumSelection select_medium(const Instance& inst, const Rational& eps) {
  const std::int64_t inv = inverse_integer(eps, "eps");
  const std::int64_t step = 3 * inv;        // 3/eps
  const std::int64_t windows = inv * inv * inv;  // 1/eps^3
  const auto n = static_cast<std::int64_t>(inst.size());

  // bound[i] = eps^(step*i), i = 0..windows+1; window i is [bound[i+1], bound[i]).
  std::vector<Rational> bound;
  bound.reserve(static_cast<std::size_t>(windows) + 2);
  const Rational ratio = pow(eps, static_cast<unsigned>(step));
  bound.emplace_back(1);
  for (std::int64_t i = 1; i <= windows + 1; ++i) bound.push_back(bound.back() * ratio);

  auto window_of = [&](const Rational& s) -> std::int64_t {
    // Largest i with s < bound[i]; 0 when s >= bound[1].
    auto it = std::upper_bound(bound.begin() + 1, bound.end(), s,
                               [](const Rational& v, const Rational& b) { return v >= b; });
    return static_cast<std::int64_t>(it - bound.begin()) - 1;
  };

  std::vector<std::int64_t> count(static_cast<std::size_t>(windows) + 2, 0);
  for (const Item& it : inst.items()) ++count[static_cast<std::size_t>(window_of(it.size))];

  const Rational cap = pow(eps, 3) * Rational(n);
  std::int64_t chosen = 0;
  for (std::int64_t i = 1; i <= windows; ++i) {
    if (Rational(count[static_cast<std::size_t>(i)]) <= cap) {
      chosen = i;
      break;
    }
  }
  if (chosen == 0) throw InvariantFailure("select_medium: no window meets the count cap");

  const Rational area_cap = eps * inst.total_area();
  MediumSelection sel;
  sel.i = static_cast<int>(chosen);
  sel.l = -1;
  for (std::int64_t l = 0; l < inv; ++l) {
    const std::int64_t e = step * chosen + 3 * l;
    const Rational hi = pow(eps, static_cast<unsigned>(e));
    const Rational lo = pow(eps, static_cast<unsigned>(e + 3));
    Rational area;
    for (const Item& it : inst.items()) {
      if (it.size >= lo && it.size < hi) area += it.size * it.size;
    }
    if (area <= area_cap) {
      sel.l = static_cast<int>(l);
      sel.p = e;
      sel.large_threshold = hi;
      sel.small_threshold = lo;
      break;
    }
  }
  if (sel.l < 0) throw InvariantFailure("select_medium: no sub-window meets the area cap");

  for (const Item& it : inst.items()) {
    if (it.size >= sel.large_threshold) {
      sel.L.push_back(it.id);
    } else if (it.size < sel.small_threshold) {
      sel.S.push_back(it.id);
    } else {
      sel.M.push_back(it.id);
    }
  }
  return sel;
}

MediumSelection classify_by_thresholds(const Instance& inst, const Rational& small,
                                       const Rational& large) {
  MediumSelection sel;
  sel.small_threshold = small;
  sel.large_threshold = large;
  for (const Item& it : inst.items()) {
    if (it.size >= large) {
      sel.L.push_back(it.id);
    } else if (it.size < small) {
      sel.S.push_back(it.id);
    } else {
      sel.M.push_back(it.id);
    }
  }
  return sel;
}

LinearGrouping linear_group_large(std::span<const Item> L, const Rational& gamma) {
  const std::int64_t groups = inverse_integer(gamma, "gamma");
  LinearGrouping out;
  if (L.empty()) return out;
  const auto sorted = sorted_non_increasing(L);
  const auto n = static_cast<std::int64_t>(sorted.size());
  const std::int64_t c = (gamma * Rational(n)).ceil();
  const std::int64_t full = n - groups * (c - 1);  // groups of size c; the rest have c-1
  std::size_t pos = 0;
  for (std::int64_t g = 1; g <= groups && pos < sorted.size(); ++g) {
    const auto len = static_cast<std::size_t>(g <= full ? c : c - 1);
    out.group_sizes.push_back(len);
    if (len == 0) continue;
    const Rational top = sorted[pos].size;
    for (std::size_t k = pos; k < pos + len; ++k) {
      if (g == 1) {
        out.L1.push_back(sorted[k].id);
      } else {
        out.rounded.push_back({sorted[k].id, top});
        out.group_of.push_back(static_cast<int>(g));
      }
    }
    pos += len;
  }
  return out;
}

namespace {

[[noreturn]] void rethrow_for_mode(const PtasParams& params, const std::exception& e) {
  if (params.mode == PtasMode::kStrict) {
    throw StrictModeInfeasible(std::string("strict mode infeasible at this scale (") + e.what() +
                               "); use relaxed mode with explicit thresholds");
  }
  throw BudgetExceeded(e.what());
}

class ConfigurationPacker {
 public:
  ConfigurationPacker(std::span<const Item> items, const PtasParams& params)
      : params_(params), cache_(params.limits) {
    std::map<Rational, std::vector<int>, std::greater<>> by_size;
    for (const Item& it : items) by_size[it.size].push_back(it.id);
    for (auto& [size, ids] : by_size) {
      std::sort(ids.begin(), ids.end());
      sizes_.push_back(size);
      ids_.push_back(std::move(ids));
    }
  }

  Packing solve() {
    std::vector<int> counts;
    for (const auto& ids : ids_) counts.push_back(static_cast<int>(ids.size()));
    std::vector<int> current(sizes_.size(), 0);
    enumerate(0, current, Rational(0), counts);
    for (const auto& c : configs_) config_set_.insert(c);

    best(counts);
    // Walk the memo to recover the chosen configuration per bin.
    Packing p;
    std::vector<std::size_t> next(sizes_.size(), 0);
    std::vector<int> v = counts;
    int bin = 1;
    while (std::any_of(v.begin(), v.end(), [](int x) { return x > 0; })) {
      const auto& cfg = configs_[static_cast<std::size_t>(memo_.at(v).second)];
      std::vector<Rational> multiset;
      std::vector<int> ids;
      for (std::size_t t = 0; t < sizes_.size(); ++t) {
        for (int k = 0; k < cfg[t]; ++k) {
          multiset.push_back(sizes_[t]);
          ids.push_back(ids_[t][next[t]++]);
        }
        v[t] -= cfg[t];
      }
      const auto cert = cache_.fits(multiset);
      for (std::size_t k = 0; k < ids.size(); ++k) {
        p.add({ids[k], bin, cert.placements[k].x, cert.placements[k].y});
      }
      ++bin;
    }
    return reorder_bins_by_count(p);
  }

 private:
  bool feasible(const std::vector<int>& cfg) {
    std::vector<Rational> multiset;
    for (std::size_t t = 0; t < sizes_.size(); ++t) {
      for (int k = 0; k < cfg[t]; ++k) multiset.push_back(sizes_[t]);
    }
    return cache_.fits(multiset).feasible;
  }

  // Feasible configurations are closed under removing items, so each count
  // grows only while the configuration stays feasible.
  void enumerate(std::size_t t, std::vector<int>& cfg, const Rational& area,
                 const std::vector<int>& counts) {
    if (t == sizes_.size()) {
      if (std::any_of(cfg.begin(), cfg.end(), [](int x) { return x > 0; })) {
        configs_.push_back(cfg);
        if (static_cast<std::int64_t>(configs_.size()) > params_.config_budget) {
          throw BudgetExceeded("more than " + std::to_string(params_.config_budget) +
                               " bin configurations");
        }
      }
      return;
    }
    enumerate(t + 1, cfg, area, counts);
    Rational a = area;
    const Rational sq = sizes_[t] * sizes_[t];
    for (int k = 1; k <= counts[t]; ++k) {
      a += sq;
      if (a > Rational(1)) break;
      cfg[t] = k;
      if (!feasible(cfg)) break;
      enumerate(t + 1, cfg, a, counts);
    }
    cfg[t] = 0;
  }

  // Cost of packing the count vector v into bins 1, 2, ...: every bin adds
  // the number of items not yet packed.
  std::int64_t best(const std::vector<int>& v) {
    std::int64_t left = 0;
    for (int x : v) left += x;
    if (left == 0) return 0;
    if (auto it = memo_.find(v); it != memo_.end()) return it->second.first;
    if (static_cast<std::int64_t>(memo_.size()) >= params_.state_budget) {
      throw BudgetExceeded("more than " + std::to_string(params_.state_budget) +
                           " search states");
    }
    std::int64_t best_cost = -1;
    int best_cfg = -1;
    std::vector<int> rest(v.size());
    std::vector<int> grown;
    for (std::size_t c = 0; c < configs_.size(); ++c) {
      const auto& cfg = configs_[c];
      bool fits = true;
      for (std::size_t t = 0; t < v.size() && fits; ++t) fits = cfg[t] <= v[t];
      if (!fits) continue;
      // Skip configurations that could take one more remaining item: moving
      // that item forward never costs more.
      bool maximal = true;
      for (std::size_t t = 0; t < v.size() && maximal; ++t) {
        if (cfg[t] < v[t]) {
          grown = cfg;
          ++grown[t];
          if (config_set_.count(grown)) maximal = false;
        }
      }
      if (!maximal) continue;
      for (std::size_t t = 0; t < v.size(); ++t) rest[t] = v[t] - cfg[t];
      const std::int64_t value = left + best(rest);
      if (best_cost < 0 || value < best_cost) {
        best_cost = value;
        best_cfg = static_cast<int>(c);
      }
    }
    if (best_cfg < 0) throw InvariantFailure("optimal_pack_rounded: no configuration applies");
    memo_.emplace(v, std::make_pair(best_cost, best_cfg));
    return best_cost;
  }

  const PtasParams& params_;
  FitCache cache_;
  std::vector<Rational> sizes_;
  std::vector<std::vector<int>> ids_;
  std::vector<std::vector<int>> configs_;
  std::set<std::vector<int>> config_set_;
  std::map<std::vector<int>, std::pair<std::int64_t, int>> memo_;
};

}  // namespace

Packing optimal_pack_rounded(std::span<const Item> rounded, const PtasParams& params) {
  if (rounded.empty()) return {};
  const bool all_above_third = std::all_of(rounded.begin(), rounded.end(), [](const Item& it) {
    return it.size > Rational(1, 3);
  });
  if (all_above_third && !params.force_enumeration) return ffds_minsum(rounded);
  try {
    return ConfigurationPacker(rounded, params).solve();
  } catch (const BudgetExceeded& e) {
    rethrow_for_mode(params, e);
  }
}

namespace {

MergeResult append_case(const Packing& pL, std::span<const Item> S, const Rational& eps,
                        const Rational& small_threshold) {
  MergeResult res;
  res.merge_case = MergeCase::kAppend;
  const RelaxedPacking q = nfih(S, small_threshold);
  const Packing fs = feasibilize(q, eps, small_threshold);
  res.small_relaxed_cost = cost(q);
  res.small_cost = cost(fs);
  res.small_bins = fs.bin_count();
  res.packing = concat(fs, pL);
  return res;
}

}  // namespace

MergeResult merge_small_large(const Packing& pL, std::span<const Item> S, const SizeTable& sizes,
                              const PtasParams& params, const Rational& small_threshold) {
  const Rational& eps = params.eps;
  const std::int64_t inv = inverse_integer(eps, "eps");
  if (S.empty()) {
    MergeResult res;
    res.merge_case = MergeCase::kGrid;
    res.packing = pL;
    return res;
  }
  const auto bins = pL.bins();
  const std::size_t first = bins.size() > 1 ? bins[1].size() : 0;
  const Rational eps3 = pow(eps, 3);
  if (!(Rational(static_cast<long>(S.size())) * eps3 < Rational(static_cast<long>(first)))) {
    return append_case(pL, S, eps, small_threshold);
  }

  // Hosts: bin-1 items, largest first.
  std::map<int, const Placement*> where;
  for (const auto& pl : pL.placements()) where[pl.item_id] = &pl;
  std::vector<int> hosts = bins[1];
  std::stable_sort(hosts.begin(), hosts.end(), [&](int a, int b) {
    const auto& sa = sizes.at(static_cast<std::size_t>(a));
    const auto& sb = sizes.at(static_cast<std::size_t>(b));
    return sa != sb ? sa > sb : a < b;
  });
  const std::int64_t allowed = (eps3 * Rational(static_cast<long>(first))).ceil();

  const auto smalls = sorted_non_increasing(S);
  std::vector<Placement> small_places;
  std::set<int> used;
  std::size_t next = 0;
  for (int h : hosts) {
    if (next == smalls.size()) break;
    if (static_cast<std::int64_t>(used.size()) == allowed) break;
    const Rational& side = sizes.at(static_cast<std::size_t>(h));
    const Rational per_row_q = side / small_threshold;
    const std::int64_t per_row =
        per_row_q >= Rational(1L << 31) ? (1L << 31) : per_row_q.floor();
    if (per_row == 0) continue;
    const Placement& hp = *where.at(h);
    used.insert(h);
    for (std::int64_t cell = 0; next < smalls.size() && cell / per_row < per_row; ++cell) {
      const Rational cx = hp.x + Rational(cell % per_row) * small_threshold;
      const Rational cy = hp.y + Rational(cell / per_row) * small_threshold;
      small_places.push_back({smalls[next++].id, 1, cx, cy});
    }
  }
  if (next < smalls.size()) {
    if (params.mode == PtasMode::kRelaxed) return append_case(pL, S, eps, small_threshold);
    throw InvariantFailure("merge_small_large: grid of " + std::to_string(allowed) +
                           " large items cannot hold " + std::to_string(S.size()) +
                           " small items");
  }

  MergeResult res;
  res.merge_case = MergeCase::kGrid;
  res.relocated = static_cast<int>(used.size());
  const int m = pL.bin_count();
  const int target = static_cast<int>(std::min<std::int64_t>(inv, m + 1));
  res.relocation_bin = target;
  for (const auto& pl : pL.placements()) {
    Placement np = pl;
    if (used.count(pl.item_id)) {
      np.bin = target;
    } else if (np.bin >= target) {
      ++np.bin;
    }
    res.packing.add(std::move(np));
  }
  for (auto& sp : small_places) res.packing.add(std::move(sp));
  res.small_relaxed_cost = static_cast<std::int64_t>(S.size());
  res.small_cost = static_cast<std::int64_t>(S.size());
  res.small_bins = 1;
  return res;
}

Packing reinstate_L1(const Packing& p, std::span<const int> L1, const Rational& eps) {
  if (L1.empty()) return p;
  const std::int64_t inv = inverse_integer(eps, "eps");
  const int m = p.bin_count();
  const auto count = static_cast<std::int64_t>(L1.size());
  // after[b] lists the new bins that follow original bin b; b = m collects
  // everything that lands past the end.
  std::vector<std::vector<int>> after(static_cast<std::size_t>(m) + 1);
  for (std::int64_t j = 1; j <= count; ++j) {
    const std::int64_t spread = (j * m + count - 1) / count;
    const std::int64_t pos = std::min<std::int64_t>(std::max(j * inv, spread), m);
    after[static_cast<std::size_t>(pos)].push_back(L1[static_cast<std::size_t>(j - 1)]);
  }
  std::vector<int> new_index(static_cast<std::size_t>(m) + 1, 0);
  Packing out;
  int index = 0;
  for (int id : after[0]) out.add({id, ++index, Rational(0), Rational(0)});
  for (int b = 1; b <= m; ++b) {
    new_index[static_cast<std::size_t>(b)] = ++index;
    for (int id : after[static_cast<std::size_t>(b)]) out.add({id, ++index, Rational(0), Rational(0)});
  }
  for (const auto& pl : p.placements()) {
    Placement np = pl;
    np.bin = new_index[static_cast<std::size_t>(pl.bin)];
    out.add(std::move(np));
  }
  return out;
}

Packing insert_medium(const Packing& p, std::span<const Item> M, const Rational& eps) {
  if (M.empty()) return p;
  const std::int64_t inv = inverse_integer(eps, "eps");
  const Packing medium = nfdh(M);
  const int mm = medium.bin_count();
  const int m = p.bin_count();

  std::vector<int> old_index(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> med_index(static_cast<std::size_t>(mm) + 1, 0);
  int index = 0;
  int next_med = 1;
  for (int b = 1; b <= m; ++b) {
    old_index[static_cast<std::size_t>(b)] = ++index;
    if (b % inv == 0 && b / inv <= inv) {
      for (int k = 0; k < 4 && next_med <= mm; ++k) med_index[static_cast<std::size_t>(next_med++)] = ++index;
    }
  }
  while (next_med <= mm) med_index[static_cast<std::size_t>(next_med++)] = ++index;

  Packing out;
  for (const auto& pl : p.placements()) {
    Placement np = pl;
    np.bin = old_index[static_cast<std::size_t>(pl.bin)];
    out.add(std::move(np));
  }
  for (const auto& pl : medium.placements()) {
    Placement np = pl;
    np.bin = med_index[static_cast<std::size_t>(pl.bin)];
    out.add(std::move(np));
  }
  return out;
}

const StageRow* StageReport::find(std::string_view name) const {
  for (const auto& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

std::string StageReport::csv(std::string_view instance_id) const {
  std::ostringstream os;
  for (const auto& row : rows) {
    os << instance_id << "," << row.name << "," << row.cost_before << "," << row.cost_after << ","
       << decimal(row.inflation) << "," << decimal(row.bound) << "," << (row.asserted ? 1 : 0)
       << "\n";
  }
  return os.str();
}

namespace {

StageRow make_row(std::string name, std::int64_t before, std::int64_t after, Rational bound,
                  bool asserted) {
  StageRow row;
  row.name = std::move(name);
  row.cost_before = before;
  row.cost_after = after;
  row.inflation = before > 0 ? Rational(after) / Rational(before) : Rational(0);
  row.bound = std::move(bound);
  row.asserted = asserted;
  return row;
}

}  // namespace

PtasResult ptas_solve(const Instance& inst, const PtasParams& params) {
  check_params(params);
  const Rational& eps = params.eps;
  const Rational one(1);
  const auto n = static_cast<long>(inst.size());
  if (params.mode == PtasMode::kStrict && Rational(n) < one / pow(eps, 3)) {
    throw InvalidArgument("strict mode requires n >= 1/eps^3 = " + (one / pow(eps, 3)).str() +
                          ", got n = " + std::to_string(n));
  }

  PtasResult res;
  StageReport& rep = res.report;
  rep.selection = params.mode == PtasMode::kStrict
                      ? select_medium(inst, eps)
                      : classify_by_thresholds(
                            inst, params.small_threshold.value_or(small_default(eps)),
                            params.large_threshold.value_or(large_default(eps)));
  const MediumSelection& sel = rep.selection;

  // Steps 1-2: round the large items and pack them optimally.
  const auto L = inst.subset(sel.L);
  const LinearGrouping lg = linear_group_large(L, grouping_fraction(params));
  const Packing pL = optimal_pack_rounded(lg.rounded, params);

  // Step 3: join the small items.
  SizeTable sizes = inst.size_table();
  for (const Item& it : lg.rounded) sizes[static_cast<std::size_t>(it.id)] = it.size;
  const auto S = inst.subset(sel.S);
  const MergeResult merged = merge_small_large(pL, S, sizes, params, sel.small_threshold);
  rep.merge_case = merged.merge_case;
  const std::int64_t merged_cost = cost(merged.packing);

  if (merged.merge_case == MergeCase::kAppend && !S.empty()) {
    const bool premises = Rational(8) * sel.small_threshold <= eps * eps;
    rep.rows.push_back(make_row("feasibilize", merged.small_relaxed_cost, merged.small_cost,
                                one + eps, premises));
  }
  rep.rows.push_back(make_row("merge", cost(pL) + merged.small_relaxed_cost, merged_cost,
                              one + Rational(4) * eps, false));

  // Step 4: the discarded items get bins of their own.
  const Packing without_medium = reinstate_L1(merged.packing, lg.L1, eps);
  const std::int64_t reinstated_cost = cost(without_medium);
  rep.rows.push_back(make_row("reinstate", merged_cost, reinstated_cost,
                              one + Rational(13) * eps, false));

  // Step 5: medium items.
  const auto M = inst.subset(sel.M);
  res.packing = insert_medium(without_medium, M, eps);
  const std::int64_t final_cost = cost(res.packing);
  {
    const Rational area_m = area_of(inst, sel.M);
    const int medium_bins = nfdh(M).bin_count();
    const bool premises = !M.empty() &&
                          Rational(static_cast<long>(M.size())) <= pow(eps, 3) * Rational(n) &&
                          area_m <= eps * inst.total_area() &&
                          Rational(medium_bins) <= Rational(4) / eps;
    rep.rows.push_back(make_row("medium", reinstated_cost, final_cost, one + Rational(7) * eps,
                                premises));
  }

  // Cumulative factors against the best lower bound on the optimum.
  const BoundsSummary bs = compute_bounds(inst);
  const std::int64_t lb = std::max(bs.lb1, bs.lb2);
  rep.rows.push_back(make_row("after_merge_vs_lb", lb, merged_cost, one + Rational(4) * eps, false));
  rep.rows.push_back(
      make_row("after_reinstate_vs_lb", lb, reinstated_cost, one + Rational(30) * eps, false));
  rep.rows.push_back(make_row("final_vs_lb", lb, final_cost, one + Rational(90) * eps, false));

  const auto violations = validate(res.packing, inst);
  if (!violations.empty()) {
    throw InvariantFailure("ptas_solve produced an infeasible packing:\n" + describe(violations));
  }
  return res;
}

}  // namespace sqpack
