#include "sqpack/exact.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <set>
#include <utility>

#include "sqpack/approx.h"
#include "sqpack/errors.h"

namespace sqpack {
namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(const SearchLimits& limits)
      : limits_(limits), start_(Clock::now()) {}

  void tick() {
    ++nodes_;
    if (nodes_ > limits_.node_budget) {
      throw BudgetExceeded("node budget of " + std::to_string(limits_.node_budget) +
                           " exceeded");
    }
    if ((nodes_ & 0xfff) == 0) {
      const std::chrono::duration<double> elapsed = Clock::now() - start_;
      if (elapsed.count() > limits_.time_budget_seconds) {
        throw BudgetExceeded("time budget of " + std::to_string(limits_.time_budget_seconds) +
                             "s exceeded");
      }
    }
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  SearchLimits limits_;
  Clock::time_point start_;
  std::int64_t nodes_ = 0;
};

// Exhaustive placement search over subset-sum coordinates. Coord is either
// int64 (sizes scaled by a common denominator) or Rational.
template <typename Coord>
class SquareSearch {
 public:
  SquareSearch(std::vector<Coord> sizes, Coord unit, Budget& budget)
      : size_(std::move(sizes)), unit_(std::move(unit)), budget_(budget) {
    const std::size_t n = size_.size();
    x_.resize(n);
    y_.resize(n);
    same_as_prev_.assign(n, false);
    for (std::size_t i = 1; i < n; ++i) same_as_prev_[i] = size_[i] == size_[i - 1];
    first_unique_ = n < 2 || !same_as_prev_[1];
    candidates_.resize(n);
    for (std::size_t i = 0; i < n; ++i) candidates_[i] = subset_sums_without(i);
  }

  bool run() { return place(0); }
  const std::vector<Coord>& xs() const { return x_; }
  const std::vector<Coord>& ys() const { return y_; }

 private:
  // Sums of every sub-multiset of the other items that leave room for item i.
  std::vector<Coord> subset_sums_without(std::size_t skip) const {
    const Coord limit = unit_ - size_[skip];
    std::set<Coord> sums{Coord(0)};
    for (std::size_t j = 0; j < size_.size(); ++j) {
      if (j == skip) continue;
      std::vector<Coord> add;
      for (const Coord& s : sums) {
        Coord t = s + size_[j];
        if (t <= limit) add.push_back(std::move(t));
      }
      sums.insert(add.begin(), add.end());
    }
    return {sums.begin(), sums.end()};
  }

  bool overlaps(std::size_t i, const Coord& x, const Coord& y) const {
    const Coord xe = x + size_[i];
    const Coord ye = y + size_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (x < x_[j] + size_[j] && x_[j] < xe && y < y_[j] + size_[j] && y_[j] < ye) {
        return true;
      }
    }
    return false;
  }

  bool place(std::size_t i) {
    if (i == size_.size()) return true;
    budget_.tick();
    const Coord slack = unit_ - size_[i];
    const bool lex = same_as_prev_[i];
    for (const Coord& y : candidates_[i]) {
      if (i == 0 && Coord(2) * y > slack) break;
      if (lex && y < y_[i - 1]) continue;
      for (const Coord& x : candidates_[i]) {
        if (i == 0 && first_unique_ && Coord(2) * x > slack) break;
        if (lex && y == y_[i - 1] && x <= x_[i - 1]) continue;
        if (overlaps(i, x, y)) continue;
        x_[i] = x;
        y_[i] = y;
        if (place(i + 1)) return true;
      }
    }
    return false;
  }

  std::vector<Coord> size_;
  Coord unit_;
  Budget& budget_;
  std::vector<Coord> x_;
  std::vector<Coord> y_;
  std::vector<bool> same_as_prev_;
  bool first_unique_ = true;
  std::vector<std::vector<Coord>> candidates_;
};

// Necessary conditions that settle most infeasible multisets at once.
bool obviously_infeasible(std::span<const Rational> sorted_desc) {
  const Rational one(1);
  Rational area;
  for (const auto& s : sorted_desc) area += s * s;
  if (area > one) return true;
  // Two squares whose sides add past 1 cannot be separated along either axis.
  return sorted_desc.size() >= 2 && sorted_desc[0] + sorted_desc[1] > one;
}

FeasibilityCertificate search_sorted(std::span<const Rational> sorted_desc,
                                     const SearchLimits& limits) {
  FeasibilityCertificate cert;
  if (sorted_desc.empty()) {
    cert.feasible = true;
    return cert;
  }
  if (obviously_infeasible(sorted_desc)) return cert;

  Budget budget(limits);
  mpz_class lcm = 1;
  for (const auto& s : sorted_desc) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.raw().get_den_mpz_t());
  }
  auto emit = [&](auto&& to_rational, const auto& xs, const auto& ys) {
    cert.feasible = true;
    for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
      cert.placements.push_back({sorted_desc[i], to_rational(xs[i]), to_rational(ys[i])});
    }
  };

  if (lcm <= mpz_class(1) << 40) {
    const std::int64_t unit = lcm.get_si();
    std::vector<std::int64_t> sizes;
    for (const auto& s : sorted_desc) {
      const mpz_class scaled = s.raw().get_num() * (lcm / s.raw().get_den());
      sizes.push_back(scaled.get_si());
    }
    SquareSearch<std::int64_t> search(std::move(sizes), unit, budget);
    if (search.run()) {
      emit([&](std::int64_t v) { return Rational(v, unit); }, search.xs(), search.ys());
    }
  } else {
    SquareSearch<Rational> search({sorted_desc.begin(), sorted_desc.end()}, Rational(1), budget);
    if (search.run()) {
      emit([](const Rational& v) { return v; }, search.xs(), search.ys());
    }
  }
  return cert;
}

// Order of indices that sorts `sizes` non-increasingly (stable).
std::vector<std::size_t> desc_order(std::span<const Rational> sizes) {
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  return order;
}

FeasibilityCertificate unsort(const FeasibilityCertificate& sorted,
                              const std::vector<std::size_t>& order) {
  FeasibilityCertificate out;
  out.feasible = sorted.feasible;
  if (!sorted.feasible) return out;
  out.placements.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) out.placements[order[k]] = sorted.placements[k];
  return out;
}

void check_size(std::size_t n, const SearchLimits& limits) {
  if (static_cast<std::int64_t>(n) > limits.max_items) {
    throw BudgetExceeded("multiset of " + std::to_string(n) + " squares exceeds max_items = " +
                         std::to_string(limits.max_items));
  }
}

}  // namespace

FeasibilityCertificate fits_in_unit_bin(std::span<const Rational> sizes,
                                        const SearchLimits& limits) {
  check_size(sizes.size(), limits);
  for (const auto& s : sizes) {
    if (s.sign() <= 0 || s > Rational(1)) {
      throw InvalidArgument("square size " + s.str() + " outside (0,1]");
    }
  }
  const auto order = desc_order(sizes);
  std::vector<Rational> sorted;
  sorted.reserve(sizes.size());
  for (std::size_t i : order) sorted.push_back(sizes[i]);
  return unsort(search_sorted(sorted, limits), order);
}

FeasibilityCertificate FitCache::fits(std::span<const Rational> sizes) {
  check_size(sizes.size(), limits_);
  const auto order = desc_order(sizes);
  std::vector<Rational> sorted;
  sorted.reserve(sizes.size());
  for (std::size_t i : order) sorted.push_back(sizes[i]);
  auto it = memo_.find(sorted);
  if (it == memo_.end()) {
    ++misses_;
    it = memo_.emplace(sorted, fits_in_unit_bin(sorted, limits_)).first;
  } else {
    ++hits_;
  }
  return unsort(it->second, order);
}

namespace {

class MinSumSearch {
 public:
  MinSumSearch(const Instance& inst, const SearchLimits& limits, const ExactOptions& options)
      : inst_(inst), limits_(limits), options_(options), budget_(limits), cache_(limits) {
    n_ = static_cast<int>(inst.size());
    const std::size_t masks = std::size_t{1} << n_;
    feasible_.assign(masks, -1);
    lb_.assign(masks, -1);
  }

  ExactResult solve() {
    // Incumbent from the 53/22 approximation.
    const ApproxResult approx = solve_53_22(inst_);
    best_cost_ = approx.report.cost;
    best_packing_ = approx.packing;

    std::vector<std::uint32_t> stack;
    const std::uint32_t all = n_ == 0 ? 0u : static_cast<std::uint32_t>((1u << n_) - 1);
    dfs(all, 1, n_, -1, 0, stack);

    ExactResult res;
    if (!best_bins_.empty()) best_packing_ = build(best_bins_);
    res.packing = best_packing_;
    res.cost = best_cost_;
    res.nodes = budget_.nodes();
    return res;
  }

 private:
  std::vector<Rational> sizes_of(std::uint32_t mask) const {
    std::vector<Rational> s;
    for (int i = 0; i < n_; ++i) {
      if (mask & (1u << i)) s.push_back(inst_.item(i).size);
    }
    return s;
  }

  FeasibilityCertificate certificate(std::uint32_t mask) {
    const auto s = sizes_of(mask);
    return options_.use_cache ? cache_.fits(s) : fits_in_unit_bin(s, limits_);
  }

  bool feasible(std::uint32_t mask) {
    if (!options_.use_cache) return certificate(mask).feasible;
    auto& f = feasible_[mask];
    if (f < 0) f = certificate(mask).feasible ? 1 : 0;
    return f == 1;
  }

  // lb1 of the sub-instance given by `mask`.
  std::int64_t lower_bound(std::uint32_t mask) {
    auto& v = lb_[mask];
    if (v >= 0) return v;
    auto s = sizes_of(mask);
    std::sort(s.begin(), s.end());
    std::int64_t total = 0;
    std::int64_t group = 1;
    Rational area;
    for (const auto& x : s) {
      total += group;
      area += x * x;
      if (area > Rational(1)) {
        ++group;
        area = Rational(0);
      }
    }
    v = total;
    return v;
  }

  void dfs(std::uint32_t rest, int bin, int prev_count, int prev_min, std::int64_t partial,
           std::vector<std::uint32_t>& stack) {
    budget_.tick();
    if (rest == 0) {
      if (partial < best_cost_) {
        best_cost_ = partial;
        best_bins_ = stack;
      }
      return;
    }
    const int left = std::popcount(rest);
    if (partial + static_cast<std::int64_t>(bin - 1) * left + lower_bound(rest) >= best_cost_) {
      return;
    }
    std::vector<std::uint32_t> options;
    for (std::uint32_t sub = rest; sub != 0; sub = (sub - 1) & rest) {
      const int c = std::popcount(sub);
      if (c > prev_count) continue;
      if (c == prev_count && std::countr_zero(sub) <= prev_min) continue;
      options.push_back(sub);
    }
    std::stable_sort(options.begin(), options.end(), [](std::uint32_t a, std::uint32_t b) {
      return std::popcount(a) > std::popcount(b);
    });
    for (std::uint32_t sub : options) {
      if (!feasible(sub)) continue;
      const int c = std::popcount(sub);
      stack.push_back(sub);
      dfs(rest & ~sub, bin + 1, c, std::countr_zero(sub),
          partial + static_cast<std::int64_t>(bin) * c, stack);
      stack.pop_back();
    }
  }

  Packing build(const std::vector<std::uint32_t>& bins) {
    Packing p;
    for (std::size_t j = 0; j < bins.size(); ++j) {
      const auto cert = certificate(bins[j]);
      if (!cert.feasible) throw InvariantFailure("exact_min_sum: chosen bin is infeasible");
      std::size_t k = 0;
      for (int i = 0; i < n_; ++i) {
        if (bins[j] & (1u << i)) {
          p.add({i, static_cast<int>(j) + 1, cert.placements[k].x, cert.placements[k].y});
          ++k;
        }
      }
    }
    return p;
  }

  const Instance& inst_;
  SearchLimits limits_;
  ExactOptions options_;
  Budget budget_;
  FitCache cache_;
  int n_ = 0;
  std::vector<std::int8_t> feasible_;
  std::vector<std::int64_t> lb_;
  std::int64_t best_cost_ = 0;
  Packing best_packing_;
  std::vector<std::uint32_t> best_bins_;
};

}  // namespace

ExactResult exact_min_sum(const Instance& inst, const SearchLimits& limits,
                          const ExactOptions& options) {
  check_size(inst.size(), limits);
  if (inst.size() > 20) throw BudgetExceeded("exact_min_sum supports at most 20 items");
  return MinSumSearch(inst, limits, options).solve();
}

}  // namespace sqpack
