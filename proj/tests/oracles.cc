#include "oracles.h"

#include <algorithm>
#include <functional>
#include <set>

namespace sqpack::oracle {

bool bin_is_feasible(const std::vector<Rational>& sizes, const std::vector<Rational>& xs,
                     const std::vector<Rational>& ys) {
  const Rational one(1);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (xs[i].sign() < 0 || ys[i].sign() < 0) return false;
    if (xs[i] + sizes[i] > one || ys[i] + sizes[i] > one) return false;
    for (std::size_t j = 0; j < i; ++j) {
      const bool apart_x = xs[i] + sizes[i] <= xs[j] || xs[j] + sizes[j] <= xs[i];
      const bool apart_y = ys[i] + sizes[i] <= ys[j] || ys[j] + sizes[j] <= ys[i];
      if (!apart_x && !apart_y) return false;
    }
  }
  return true;
}

bool reference_fits(const std::vector<Rational>& sizes) {
  std::set<Rational> sums{Rational(0)};
  for (const auto& s : sizes) {
    std::set<Rational> next = sums;
    for (const auto& v : sums) next.insert(v + s);
    sums = std::move(next);
  }
  const std::vector<Rational> coords(sums.begin(), sums.end());
  const std::size_t n = sizes.size();
  std::vector<Rational> xs(n), ys(n);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == n) return true;
    for (const auto& x : coords) {
      if (x + sizes[i] > Rational(1)) break;
      for (const auto& y : coords) {
        if (y + sizes[i] > Rational(1)) break;
        xs[i] = x;
        ys[i] = y;
        std::vector<Rational> s(sizes.begin(), sizes.begin() + static_cast<long>(i) + 1);
        std::vector<Rational> px(xs.begin(), xs.begin() + static_cast<long>(i) + 1);
        std::vector<Rational> py(ys.begin(), ys.begin() + static_cast<long>(i) + 1);
        if (bin_is_feasible(s, px, py) && place(i + 1)) return true;
      }
    }
    return false;
  };
  return place(0);
}

namespace {

Rational random_fraction(SplitMix64& rng, std::int64_t den) {
  return Rational(static_cast<long>(rng.uniform(1, den)), static_cast<long>(den));
}

void fill_region(SplitMix64& rng, const Rational& x, const Rational& y, const Rational& side,
                 int budget, Construction& out) {
  if (budget <= 0) return;
  const auto choice = rng.uniform(0, 3);
  if (choice == 0 && budget >= 4) {
    const Rational half = side / Rational(2);
    int left = budget;
    for (int q = 0; q < 4 && left > 0; ++q) {
      const int share = static_cast<int>(rng.uniform(0, left));
      fill_region(rng, x + (q % 2 ? half : Rational(0)), y + (q / 2 ? half : Rational(0)), half,
                  share, out);
      left -= share;
    }
    return;
  }
  if (choice == 1 && budget >= 3) {
    // Big square in the corner, a column of equal squares on its right and a
    // row on top.
    const Rational big = side * Rational(static_cast<long>(rng.uniform(50, 80)), 100);
    out.sizes.push_back(big);
    out.xs.push_back(x);
    out.ys.push_back(y);
    const Rational rest = side - big;
    int left = budget - 1;
    for (Rational py = y; py + rest <= y + side && left > 0; py += rest, --left) {
      out.sizes.push_back(rest);
      out.xs.push_back(x + big);
      out.ys.push_back(py);
    }
    for (Rational px = x; px + rest <= x + big && left > 0; px += rest, --left) {
      out.sizes.push_back(rest);
      out.xs.push_back(px);
      out.ys.push_back(y + big);
    }
    return;
  }
  // One square of random side pushed to a random corner of the region.
  const Rational s = side * random_fraction(rng, 20);
  const Rational slack = side - s;
  out.sizes.push_back(s);
  out.xs.push_back(x + (rng.uniform(0, 1) ? slack : Rational(0)));
  out.ys.push_back(y + (rng.uniform(0, 1) ? slack : Rational(0)));
}

}  // namespace

Construction random_feasible_bin(SplitMix64& rng, int max_items) {
  Construction c;
  while (c.sizes.empty()) {
    fill_region(rng, Rational(0), Rational(0), Rational(1),
                static_cast<int>(rng.uniform(1, max_items)), c);
  }
  // The splitting can exceed the requested count by at most the last step;
  // drop squares from the end (removing squares keeps the placement valid).
  while (static_cast<int>(c.sizes.size()) > max_items) {
    c.sizes.pop_back();
    c.xs.pop_back();
    c.ys.pop_back();
  }
  return c;
}

std::int64_t recount_cost(const Packing& p) {
  std::int64_t c = 0;
  for (const auto& pl : p.placements()) c += pl.bin;
  return c;
}

std::int64_t reference_lb1(std::vector<Rational> sizes) {
  std::sort(sizes.begin(), sizes.end());
  std::int64_t total = 0;
  std::int64_t group = 1;
  Rational area;
  for (const auto& s : sizes) {
    total += group;
    area += s * s;
    if (area > Rational(1)) {
      ++group;
      area = Rational(0);
    }
  }
  return total;
}

}  // namespace sqpack::oracle
