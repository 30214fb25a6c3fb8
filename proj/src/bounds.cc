#include "sqpack/bounds.h"

#include <algorithm>

#include "sqpack/errors.h"
#include "sqpack/ffds.h"
#include "sqpack/shelves.h"

namespace sqpack {
namespace {

std::vector<Item> medium_and_large(const Instance& inst) {
  std::vector<Item> out;
  for (const Item& it : inst.items()) {
    if (size_class(it.size) != SizeClass::kSmall) out.push_back(it);
  }
  return out;
}

}  // namespace

SizeClass size_class(const Rational& size) {
  if (size <= Rational(1, 3)) return SizeClass::kSmall;
  if (size <= Rational(1, 2)) return SizeClass::kMedium;
  return SizeClass::kLarge;
}

Classification classify(const Instance& inst) {
  Classification c;
  for (const Item& it : inst.items()) {
    switch (size_class(it.size)) {
      case SizeClass::kSmall: c.small.push_back(it.id); break;
      case SizeClass::kMedium: c.medium.push_back(it.id); break;
      case SizeClass::kLarge: c.large.push_back(it.id); break;
    }
  }
  return c;
}

GroupPartition build_groups(const Instance& inst) {
  GroupPartition gp;
  const Rational one(1);
  std::vector<int> current;
  Rational area;
  std::vector<bool> closed;
  for (const Item& it : sorted_non_decreasing(inst.items())) {
    current.push_back(it.id);
    area += it.size * it.size;
    if (area > one) {
      gp.groups.push_back(std::move(current));
      closed.push_back(true);
      current.clear();
      area = Rational(0);
    }
  }
  if (!current.empty()) {
    gp.groups.push_back(std::move(current));
    closed.push_back(false);
  }

  auto all_small = [&](const std::vector<int>& g) {
    return std::all_of(g.begin(), g.end(), [&](int id) {
      return size_class(inst.item(id).size) == SizeClass::kSmall;
    });
  };
  while (gp.r < gp.q() && closed[static_cast<std::size_t>(gp.r)] &&
         all_small(gp.groups[static_cast<std::size_t>(gp.r)])) {
    ++gp.r;
  }
  // Non-decreasing order means no all-small group can follow a mixed one.
  for (int i = gp.r + 1; i < gp.q(); ++i) {
    for (int id : gp.groups[static_cast<std::size_t>(i)]) {
      if (size_class(inst.item(id).size) == SizeClass::kSmall) {
        throw InvariantFailure("build_groups: small item after group r+1");
      }
    }
  }
  if (gp.r < gp.q()) {
    for (int id : gp.groups[static_cast<std::size_t>(gp.r)]) {
      if (size_class(inst.item(id).size) == SizeClass::kSmall) gp.small_tail.push_back(id);
    }
  }
  for (int i = 0; i < gp.r; ++i) {
    gp.R += static_cast<std::int64_t>(i + 1) *
            static_cast<std::int64_t>(gp.groups[static_cast<std::size_t>(i)].size());
  }
  gp.R += static_cast<std::int64_t>(gp.r + 1) * static_cast<std::int64_t>(gp.small_tail.size());
  return gp;
}

std::int64_t lb1(const GroupPartition& gp) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < gp.groups.size(); ++i) {
    total += static_cast<std::int64_t>(i + 1) * static_cast<std::int64_t>(gp.groups[i].size());
  }
  return total;
}

std::int64_t lb2(const GroupPartition& gp, const Instance& inst) {
  return gp.R + cost(ffds_minsum(medium_and_large(inst)));
}

KbStats kb_stats(const Instance& inst) {
  const auto items = medium_and_large(inst);
  const Packing p = ffds(items);
  const auto bins = p.bins();
  KbStats s;
  for (std::size_t j = 1; j < bins.size(); ++j) {
    int medium = 0;
    int large = 0;
    for (int id : bins[j]) {
      (size_class(inst.item(id).size) == SizeClass::kLarge ? large : medium)++;
    }
    if (medium > 0) {
      s.k += medium + large;
    } else {
      s.b += large;
    }
  }
  return s;
}

Rational refined_lb1_rhs(std::int64_t R, std::int64_t r, std::int64_t k, std::int64_t b) {
  const Rational Rq(R), rq(r), kq(k), bq(b);
  return Rq + rq * kq - Rational(13) * rq + kq * kq / Rational(18) - Rational(17) * kq / Rational(18) +
         rq * bq + kq * bq / Rational(9) - Rational(3) * bq / Rational(2) + Rational(4) +
         bq * bq / Rational(8);
}

BoundsSummary compute_bounds(const Instance& inst) {
  BoundsSummary s;
  s.groups = build_groups(inst);
  s.lb1 = lb1(s.groups);
  s.ffds0 = cost(ffds_minsum(medium_and_large(inst)));
  s.lb2 = s.groups.R + s.ffds0;
  s.kb = kb_stats(inst);
  s.refined_rhs = refined_lb1_rhs(s.groups.R, s.groups.r, s.kb.k, s.kb.b);
  const auto c = classify(inst);
  s.small = c.small.size();
  s.medium = c.medium.size();
  s.large = c.large.size();
  return s;
}

}  // namespace sqpack
