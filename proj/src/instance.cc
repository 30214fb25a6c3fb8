#include "sqpack/instance.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "sqpack/errors.h"

namespace sqpack {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos) {
    lines.pop_back();
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_count(std::string_view tok, const std::string& what) {
  if (tok.empty() || tok.size() > 12) throw ParseError("malformed " + what + " '" + std::string(tok) + "'");
  long v = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed " + what + " '" + std::string(tok) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

Rational draw_size(SplitMix64& rng, const Rational& lo, const Rational& hi) {
  // Multiples k/D with lo < k/D <= hi.
  const Rational d(kSizeDenominator);
  const std::int64_t kmin = (lo * d).floor() + 1;
  const std::int64_t kmax = (hi * d).floor();
  if (kmin > kmax) {
    throw InvalidArgument("size window (" + lo.str() + ", " + hi.str() +
                          "] contains no multiple of 1/" + std::to_string(kSizeDenominator));
  }
  return Rational(rng.uniform(kmin, kmax), kSizeDenominator);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("uniform: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % range);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::kAdversarial: return "adversarial";
    case Family::kUniform: return "uniform";
    case Family::kAllLarge: return "all_large";
    case Family::kCornerMix: return "corner_mix";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "adversarial") return Family::kAdversarial;
  if (name == "uniform") return Family::kUniform;
  if (name == "all_large") return Family::kAllLarge;
  if (name == "corner_mix") return Family::kCornerMix;
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

Instance gen_adversarial(int t) {
  if (t < 3) throw InvalidArgument("adversarial family requires t >= 3");
  std::vector<Rational> sizes;
  sizes.reserve(static_cast<std::size_t>(t) * t + t);
  for (int i = 0; i < t * t; ++i) sizes.emplace_back(1, t);
  for (int i = 0; i < t; ++i) sizes.push_back(Rational(1) - Rational(1, t));
  return Instance::from_sizes(std::move(sizes));
}

Instance gen_random(const GeneratorSpec& spec) {
  if (spec.n < 0) throw InvalidArgument("n must be non-negative");
  SplitMix64 rng(spec.seed);
  std::vector<Rational> sizes;
  sizes.reserve(static_cast<std::size_t>(spec.n));
  switch (spec.family) {
    case Family::kUniform:
      if (spec.lo.sign() <= 0 || spec.lo >= spec.hi || spec.hi > Rational(1)) {
        throw InvalidArgument("uniform requires 0 < lo < hi <= 1");
      }
      for (int i = 0; i < spec.n; ++i) sizes.push_back(draw_size(rng, spec.lo, spec.hi));
      break;
    case Family::kAllLarge:
      if (spec.lo < Rational(1, 2) || spec.lo >= Rational(1)) {
        throw InvalidArgument("all_large requires 1/2 <= lo < 1");
      }
      for (int i = 0; i < spec.n; ++i) sizes.push_back(draw_size(rng, spec.lo, Rational(1)));
      break;
    case Family::kCornerMix:
      // Large (1/2, 3/4] and medium (1/3, 1/2] items with equal odds.
      for (int i = 0; i < spec.n; ++i) {
        if (rng.uniform(0, 1) == 0) {
          sizes.push_back(draw_size(rng, Rational(1, 2), Rational(3, 4)));
        } else {
          sizes.push_back(draw_size(rng, Rational(1, 3), Rational(1, 2)));
        }
      }
      break;
    case Family::kAdversarial:
      throw InvalidArgument("use gen_adversarial for the adversarial family");
  }
  return Instance::from_sizes(std::move(sizes));
}

Instance generate(const GeneratorSpec& spec) {
  return spec.family == Family::kAdversarial ? gen_adversarial(spec.t) : gen_random(spec);
}

Instance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty instance file");
  const auto head = split_ws(lines[0]);
  if (head.size() != 1) throw ParseError("line 1: expected item count");
  const long n = parse_count(head[0], "item count");
  if (static_cast<long>(lines.size()) - 1 != n) {
    throw ParseError("item count mismatch: header says " + std::to_string(n) + ", found " +
                     std::to_string(lines.size() - 1) + " size lines");
  }
  std::vector<Rational> sizes;
  sizes.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    const auto toks = split_ws(lines[static_cast<std::size_t>(i)]);
    if (toks.size() != 1) throw ParseError("line " + std::to_string(i + 1) + ": expected one size");
    Rational s;
    try {
      s = Rational::parse(toks[0]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (s.sign() <= 0 || s > Rational(1)) {
      throw ParseError("line " + std::to_string(i + 1) + ": size " + s.str() + " outside (0,1]");
    }
    sizes.push_back(std::move(s));
  }
  return Instance::from_sizes(std::move(sizes));
}

std::string serialize_instance(const Instance& inst) {
  std::string out = std::to_string(inst.size()) + "\n";
  for (const auto& it : inst.items()) out += it.size.str() + "\n";
  return out;
}

std::string serialize_packing(const Packing& p) {
  const Packing c = p.canonical();
  std::string out = std::to_string(c.bin_count()) + "\n";
  for (const auto& pl : c.placements()) {
    out += std::to_string(pl.item_id) + " " + std::to_string(pl.bin) + " " + pl.x.str() + " " +
           pl.y.str() + "\n";
  }
  return out;
}

Packing parse_packing(std::string_view text, const Instance& inst) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty packing file");
  const auto head = split_ws(lines[0]);
  if (head.size() != 1) throw ParseError("line 1: expected bin count");
  const long m = parse_count(head[0], "bin count");
  Packing p;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto toks = split_ws(lines[i]);
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    if (toks.size() != 4) throw ParseError(where + "expected 'id bin x y'");
    Placement pl;
    try {
      pl.item_id = static_cast<int>(parse_count(toks[0], "item id"));
      pl.bin = static_cast<int>(parse_count(toks[1], "bin index"));
      pl.x = Rational::parse(toks[2]);
      pl.y = Rational::parse(toks[3]);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    p.add(std::move(pl));
  }
  if (p.bin_count() != m) {
    throw ParseError("bin count mismatch: header says " + std::to_string(m) +
                     ", placements use " + std::to_string(p.bin_count()));
  }
  if (const auto v = validate(p, inst); !v.empty()) {
    throw ParseError("infeasible packing:\n" + describe(v));
  }
  return p;
}

std::string render_svg(const Packing& p, const Instance& inst) {
  constexpr double kBin = 1000.0;
  constexpr double kGap = 100.0;
  constexpr double kMargin = 50.0;
  const int m = p.bin_count();
  const double width = m == 0 ? 2 * kMargin : 2 * kMargin + m * kBin + (m - 1) * kGap;
  const double height = kBin + 2 * kMargin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
     << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  const auto bins = p.bins();
  std::vector<const Placement*> by_item(inst.size(), nullptr);
  for (const auto& pl : p.placements()) {
    if (pl.item_id >= 0 && static_cast<std::size_t>(pl.item_id) < inst.size()) {
      by_item[static_cast<std::size_t>(pl.item_id)] = &pl;
    }
  }
  for (int j = 1; j <= m; ++j) {
    const double ox = kMargin + (j - 1) * (kBin + kGap);
    const double oy = kMargin;
    os << "<g class=\"bin\" id=\"bin" << j << "\">\n";
    os << "<rect x=\"" << fmt(ox) << "\" y=\"" << fmt(oy) << "\" width=\"" << fmt(kBin)
       << "\" height=\"" << fmt(kBin) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>\n";
    os << "<text x=\"" << fmt(ox + kBin / 2) << "\" y=\"" << fmt(oy - 12)
       << "\" text-anchor=\"middle\" font-size=\"32\">" << j << "</text>\n";
    auto ids = bins[static_cast<std::size_t>(j)];
    std::sort(ids.begin(), ids.end());
    for (int id : ids) {
      const Placement& pl = *by_item[static_cast<std::size_t>(id)];
      const double s = inst.item(id).size.to_double();
      const double x = ox + pl.x.to_double() * kBin;
      // SVG y grows downward; bins are drawn with y = 0 at the bottom.
      const double y = oy + (1.0 - pl.y.to_double() - s) * kBin;
      os << "<rect class=\"item\" data-id=\"" << id << "\" x=\"" << fmt(x) << "\" y=\""
         << fmt(y) << "\" width=\"" << fmt(s * kBin) << "\" height=\"" << fmt(s * kBin)
         << "\" fill=\"lightgray\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << contents;
}

}  // namespace sqpack
