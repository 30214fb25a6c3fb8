#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sqpack/model.h"

namespace sqpack {

// Seeded 64-bit generator with the splitmix64 output function; the stream is
// identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

enum class Family { kAdversarial, kUniform, kAllLarge, kCornerMix };

std::string to_string(Family f);
Family parse_family(std::string_view name);

struct GeneratorSpec {
  Family family = Family::kUniform;
  int t = 3;                  // adversarial
  int n = 0;                  // uniform, all_large, corner_mix
  Rational lo{0};             // uniform: sizes in (lo, hi]; all_large: sizes in (lo, 1]
  Rational hi{1};
  std::uint64_t seed = 1;
};

// Random sizes are multiples of 1/kSizeDenominator.
inline constexpr std::int64_t kSizeDenominator = 1'000'000;

// t^2 items of size 1/t followed by t items of size 1 - 1/t. Requires t >= 3.
Instance gen_adversarial(int t);

// Deterministic in every field of `spec`, seed included. Throws
// InvalidArgument on bad bounds or when the size window holds no multiple of
// 1/kSizeDenominator.
Instance gen_random(const GeneratorSpec& spec);

// Dispatches on the family, including adversarial.
Instance generate(const GeneratorSpec& spec);

// Instance file: "n\n" then n lines "p/q". Decimals are accepted on input.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

// Packing file: "m\n" then one line per item "id bin x y", sorted by id.
std::string serialize_packing(const Packing& p);
// Parses and re-validates against the instance; throws ParseError listing
// the violations when the packing is infeasible.
Packing parse_packing(std::string_view text, const Instance& inst);

// One 1000x1000 outlined square per bin, left to right, each item a filled
// rectangle.
std::string render_svg(const Packing& p, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace sqpack
