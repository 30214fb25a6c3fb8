#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqpack/model.h"
#include "sqpack/ptas.h"

namespace sqpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Nothing is written to
// std::cout or std::cerr directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct AlgoOptions {
  std::string algo;
  bool feasibilize = false;
  PtasParams ptas;
  std::optional<Rational> nfih_threshold;
  int max_items = 9;
  std::int64_t budget = 200'000'000;
};

// Every algorithm name accepted by solve and bench.
const std::vector<std::string>& algorithm_names();

struct SolveOutcome {
  // Absent for nfih without feasibilization (the packing overflows its bins).
  std::optional<Packing> packing;
  std::int64_t cost = 0;
  int bins = 0;
  // Report rows without the instance/algo/timing columns.
  std::vector<std::vector<std::string>> rows;
};

SolveOutcome solve_with(const Instance& inst, const AlgoOptions& options);

// Header of the solve --report and bench CSV.
std::string report_header(bool with_timing);

}  // namespace sqpack::cli
