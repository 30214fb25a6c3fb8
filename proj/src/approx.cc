#include "sqpack/approx.h"

#include <algorithm>
#include <sstream>

#include "sqpack/exact.h"
#include "sqpack/ffds.h"
#include "sqpack/shelves.h"

namespace sqpack {

ApproxResult solve_53_22(const Instance& inst) {
  const BoundsSummary bs = compute_bounds(inst);
  const GroupPartition& gp = bs.groups;

  Packing small_part;
  auto append_group = [&](const std::vector<int>& ids) {
    if (ids.empty()) return;
    small_part = concat(small_part, nfdh(inst.subset(ids)));
  };
  for (int i = 0; i < gp.r; ++i) append_group(gp.groups[static_cast<std::size_t>(i)]);
  append_group(gp.small_tail);

  std::vector<Item> big;
  for (const Item& it : inst.items()) {
    if (size_class(it.size) != SizeClass::kSmall) big.push_back(it);
  }
  const Packing large_part = ffds_minsum(big);

  ApproxResult res;
  res.packing = concat(small_part, large_part);

  ApproxReport& rep = res.report;
  rep.cost = cost(res.packing);
  rep.lb1 = bs.lb1;
  rep.lb2 = bs.lb2;
  rep.R = gp.R;
  rep.r = gp.r;
  rep.k = bs.kb.k;
  rep.b = bs.kb.b;
  rep.small_bins = small_part.bin_count();
  rep.ffds0 = bs.ffds0;
  rep.upper_bound_2R_plus_ffds =
      2 * gp.R + bs.ffds0 + static_cast<std::int64_t>(rep.k + rep.b) * (2 * gp.r + 2);
  const std::int64_t best_lb = std::max(rep.lb1, rep.lb2);
  rep.ratio_vs_max_lb = best_lb > 0 ? Rational(rep.cost) / Rational(best_lb) : Rational(0);
  return res;
}

std::string decimal(const Rational& r, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  const mpq_class scaled = r.raw() * scale;
  // Round half up on the absolute value.
  mpz_class num = abs(scaled.get_num()) * 2 + scaled.get_den();
  mpz_class den = scaled.get_den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string out = r.sign() < 0 ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

std::string RatioSuite::csv() const {
  std::ostringstream os;
  os << kRatioCsvHeader << "\n";
  for (const auto& row : rows) {
    os << row.instance_id << "," << row.n << "," << row.cost << "," << row.lb1 << "," << row.lb2
       << "," << (row.opt ? std::to_string(*row.opt) : "") << "," << decimal(row.ratio_vs_lb)
       << "," << (row.ratio_vs_opt ? decimal(*row.ratio_vs_opt) : "") << "\n";
  }
  return os.str();
}

RatioSuite empirical_ratio_suite(std::span<const NamedInstance> corpus,
                                 std::optional<int> exact_up_to) {
  RatioSuite suite;
  for (const auto& named : corpus) {
    const auto res = solve_53_22(named.instance);
    RatioRow row;
    row.instance_id = named.id;
    row.n = named.instance.size();
    row.cost = res.report.cost;
    row.lb1 = res.report.lb1;
    row.lb2 = res.report.lb2;
    row.ratio_vs_lb = res.report.ratio_vs_max_lb;
    if (exact_up_to && static_cast<int>(named.instance.size()) <= *exact_up_to) {
      SearchLimits limits;
      limits.max_items = std::max(limits.max_items, *exact_up_to);
      const auto ex = exact_min_sum(named.instance, limits);
      row.opt = ex.cost;
      row.ratio_vs_opt = ex.cost > 0 ? Rational(row.cost) / Rational(ex.cost) : Rational(1);
    }
    if (!suite.max_ratio_vs_lb || row.ratio_vs_lb > *suite.max_ratio_vs_lb) {
      suite.max_ratio_vs_lb = row.ratio_vs_lb;
    }
    if (row.ratio_vs_opt &&
        (!suite.max_ratio_vs_opt || *row.ratio_vs_opt > *suite.max_ratio_vs_opt)) {
      suite.max_ratio_vs_opt = row.ratio_vs_opt;
    }
    suite.rows.push_back(std::move(row));
  }
  return suite;
}

}  // namespace sqpack
