#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "sqpack/approx.h"
#include "sqpack/bounds.h"
#include "sqpack/errors.h"
#include "sqpack/exact.h"
#include "sqpack/ffds.h"
#include "sqpack/instance.h"
#include "sqpack/shelves.h"

namespace sqpack::cli {
namespace {

namespace fs = std::filesystem;

const char* const kReportColumns =
    "instance,algo,n,cost,bins,lb1,lb2,R,r,k,b,ffds0,small_bins,upper_bound,ratio_vs_lb,"
    "stage,stage_cost_before,stage_cost_after,stage_inflation,stage_bound,status";

// Columns after instance,algo and before status.
constexpr std::size_t kRowWidth = 18;

std::vector<std::string> blank_row() { return std::vector<std::string>(kRowWidth); }

std::string join_csv(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ',';
    s += fields[i];
  }
  return s;
}

// Keeps error messages on one CSV cell.
std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

Rational parse_rational_option(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw InvalidArgument(std::string(flag) + ": " + e.what());
  }
}

void check_packing(const Packing& p, const Instance& inst, const std::string& algo) {
  const auto violations = validate(p, inst);
  if (!violations.empty()) {
    throw InvariantFailure(algo + " produced an infeasible packing:\n" + describe(violations));
  }
}

// Fills the columns shared by every algorithm.
std::vector<std::string> summary_row(const Instance& inst, std::int64_t cost_value, int bins,
                                     const BoundsSummary& bs) {
  auto row = blank_row();
  row[0] = std::to_string(inst.size());
  row[1] = std::to_string(cost_value);
  row[2] = std::to_string(bins);
  row[3] = std::to_string(bs.lb1);
  row[4] = std::to_string(bs.lb2);
  row[5] = std::to_string(bs.groups.R);
  row[6] = std::to_string(bs.groups.r);
  row[7] = std::to_string(bs.kb.k);
  row[8] = std::to_string(bs.kb.b);
  row[9] = std::to_string(bs.ffds0);
  const std::int64_t lb = std::max(bs.lb1, bs.lb2);
  row[12] = lb > 0 ? decimal(Rational(cost_value) / Rational(lb)) : "";
  return row;
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"nfdh", "ffdh",       "nfih", "ffds",
                                              "approx5322", "ptas", "exact"};
  return names;
}

std::string report_header(bool with_timing) {
  std::string h = kReportColumns;
  if (with_timing) h += ",micros";
  return h;
}

SolveOutcome solve_with(const Instance& inst, const AlgoOptions& options) {
  const std::string& algo = options.algo;
  SolveOutcome out;
  const BoundsSummary bs = compute_bounds(inst);
  auto finish = [&](Packing p) {
    check_packing(p, inst, algo);
    out.cost = cost(p);
    out.bins = p.bin_count();
    out.packing = std::move(p);
    out.rows.push_back(summary_row(inst, out.cost, out.bins, bs));
  };

  if (algo == "nfdh") {
    finish(nfdh(inst.items()));
  } else if (algo == "ffdh") {
    finish(ffdh(inst.items()));
  } else if (algo == "ffds") {
    finish(ffds_minsum(inst.items()));
  } else if (algo == "nfih") {
    Rational threshold;
    if (options.nfih_threshold) {
      threshold = *options.nfih_threshold;
    } else {
      for (const Item& it : inst.items()) threshold = max(threshold, it.size);
    }
    const RelaxedPacking q = nfih(inst.items(), threshold);
    if (options.feasibilize) {
      finish(feasibilize(q, options.ptas.eps, threshold));
    } else {
      out.cost = cost(q);
      out.bins = q.bin_count();
      out.rows.push_back(summary_row(inst, out.cost, out.bins, bs));
    }
  } else if (algo == "approx5322") {
    const ApproxResult res = solve_53_22(inst);
    finish(res.packing);
    auto& row = out.rows.back();
    row[10] = std::to_string(res.report.small_bins);
    row[11] = std::to_string(res.report.upper_bound_2R_plus_ffds);
  } else if (algo == "exact") {
    SearchLimits limits;
    limits.max_items = options.max_items;
    limits.node_budget = options.budget;
    finish(exact_min_sum(inst, limits).packing);
  } else if (algo == "ptas") {
    const PtasResult res = ptas_solve(inst, options.ptas);
    finish(res.packing);
    for (const auto& stage : res.report.rows) {
      auto row = blank_row();
      row[0] = std::to_string(inst.size());
      row[13] = stage.name;
      row[14] = std::to_string(stage.cost_before);
      row[15] = std::to_string(stage.cost_after);
      row[16] = decimal(stage.inflation);
      row[17] = decimal(stage.bound);
      out.rows.push_back(std::move(row));
    }
  } else {
    throw InvalidArgument("unknown algorithm '" + algo + "'");
  }
  return out;
}

namespace {

struct PtasFlags {
  std::string eps = "1/4";
  std::string mode = "strict";
  std::string gamma;
  std::string small;
  std::string large;
};

void add_algo_flags(CLI::App* cmd, AlgoOptions& opts, PtasFlags& pf) {
  cmd->add_flag("--feasibilize", opts.feasibilize, "nfih: repair overflow levels");
  cmd->add_option("--eps", pf.eps, "ptas/nfih accuracy, 1/eps integral")->capture_default_str();
  cmd->add_option("--mode", pf.mode, "ptas mode")
      ->check(CLI::IsMember({"strict", "relaxed"}))
      ->capture_default_str();
  cmd->add_option("--gamma", pf.gamma, "ptas linear grouping fraction (default eps^2)");
  cmd->add_option("--small", pf.small, "ptas relaxed small threshold (default eps^4/2) / nfih size cap");
  cmd->add_option("--large", pf.large, "ptas relaxed large threshold (default max(eps, 0.333334))");
  cmd->add_option("--max-items", opts.max_items, "exact: item limit")->capture_default_str();
  cmd->add_option("--budget", opts.budget, "exact: node budget")->capture_default_str();
}

void finalize_algo(AlgoOptions& opts, const PtasFlags& pf) {
  opts.ptas.eps = parse_rational_option(pf.eps, "--eps");
  opts.ptas.mode = parse_mode(pf.mode);
  if (!pf.gamma.empty()) opts.ptas.gamma = parse_rational_option(pf.gamma, "--gamma");
  if (!pf.small.empty()) {
    const Rational small = parse_rational_option(pf.small, "--small");
    if (opts.algo == "nfih") {
      opts.nfih_threshold = small;
    } else {
      opts.ptas.small_threshold = small;
    }
  }
  if (!pf.large.empty()) opts.ptas.large_threshold = parse_rational_option(pf.large, "--large");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SQPACK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("SQPACK_THREADS must be a positive integer, got '") +
                            env + "'");
    }
  }
  return n;
}

std::string format_rows(const std::string& instance_id, const std::string& algo,
                        const std::vector<std::vector<std::string>>& rows, const std::string& status,
                        std::optional<std::int64_t> micros) {
  std::string s;
  for (const auto& row : rows) {
    s += instance_id + "," + algo + "," + join_csv(row) + "," + status;
    if (micros) s += "," + std::to_string(*micros);
    s += "\n";
  }
  return s;
}

int cmd_gen(const GeneratorSpec& spec, const std::string& output, std::ostream& out) {
  const Instance inst = generate(spec);
  write_file(output, serialize_instance(inst));
  out << "wrote " << inst.size() << " items to " << output << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& file, AlgoOptions& opts, const std::string& pack_out,
              const std::string& report, std::ostream& out) {
  const Instance inst = parse_instance(read_file(file));
  const SolveOutcome res = solve_with(inst, opts);
  if (!pack_out.empty()) {
    if (!res.packing) {
      throw InvalidArgument("nfih without --feasibilize yields no feasible packing to write");
    }
    write_file(pack_out, serialize_packing(*res.packing));
  }
  if (!report.empty()) {
    const std::string id = fs::path(file).filename().string();
    write_file(report, report_header(false) + "\n" +
                           format_rows(id, opts.algo, res.rows, "ok", std::nullopt));
  }
  out << "cost " << res.cost << "\n";
  out << "bins " << res.bins << "\n";
  if (!res.packing) out << "relaxed yes\n";
  return kExitOk;
}

int cmd_validate(const std::string& pack_file, const std::string& inst_file, std::ostream& out,
                 std::ostream& err) {
  const Instance inst = parse_instance(read_file(inst_file));
  try {
    const Packing p = parse_packing(read_file(pack_file), inst);
    out << "ok cost " << cost(p) << " bins " << p.bin_count() << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "invalid packing: " << e.what() << "\n";
    return kExitDomainError;
  }
}

int cmd_bounds(const std::string& file, std::ostream& out) {
  const Instance inst = parse_instance(read_file(file));
  const BoundsSummary bs = compute_bounds(inst);
  out << "n " << inst.size() << "\n";
  out << "small " << bs.small << "\n";
  out << "medium " << bs.medium << "\n";
  out << "large " << bs.large << "\n";
  out << "groups " << bs.groups.q() << "\n";
  out << "r " << bs.groups.r << "\n";
  out << "R " << bs.groups.R << "\n";
  out << "k " << bs.kb.k << "\n";
  out << "b " << bs.kb.b << "\n";
  out << "lb1 " << bs.lb1 << "\n";
  out << "lb2 " << bs.lb2 << "\n";
  out << "ffds0 " << bs.ffds0 << "\n";
  out << "refined_lb1_rhs " << bs.refined_rhs << "\n";
  out << "refined_lb1_holds " << (bs.refined_rhs <= Rational(bs.lb1) ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_render(const std::string& pack_file, const std::string& inst_file,
               const std::string& output, std::ostream& out) {
  const Instance inst = parse_instance(read_file(inst_file));
  const Packing p = parse_packing(read_file(pack_file), inst);
  write_file(output, render_svg(p, inst));
  out << "wrote " << output << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& corpus, const std::string& algos, const std::string& output,
              bool timing, AlgoOptions base, const PtasFlags& pf, std::ostream& out) {
  if (!fs::is_directory(corpus)) throw InvalidArgument("corpus '" + corpus + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".smsbpp") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const auto names = split_list(algos);
  if (names.empty()) throw InvalidArgument("--algos lists no algorithm");
  for (const auto& a : names) {
    if (std::find(algorithm_names().begin(), algorithm_names().end(), a) ==
        algorithm_names().end()) {
      throw InvalidArgument("unknown algorithm '" + a + "'");
    }
  }
  std::vector<Instance> instances;
  for (const auto& f : files) instances.push_back(parse_instance(read_file(f.string())));

  const std::size_t cells = files.size() * names.size();
  std::vector<std::string> results(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const std::size_t fi = c / names.size();
      AlgoOptions opts = base;
      opts.algo = names[c % names.size()];
      std::optional<std::int64_t> micros;
      std::string status = "ok";
      std::vector<std::vector<std::string>> rows;
      const auto start = std::chrono::steady_clock::now();
      try {
        finalize_algo(opts, pf);
        rows = solve_with(instances[fi], opts).rows;
      } catch (const std::exception& e) {
        status = "error: " + sanitize(e.what());
        auto row = blank_row();
        row[0] = std::to_string(instances[fi].size());
        rows = {row};
      }
      if (timing) {
        micros = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
      }
      results[c] = format_rows(files[fi].filename().string(), opts.algo, rows, status, micros);
    }
  };
  const unsigned threads = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(cells, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string csv = report_header(timing) + "\n";
  for (const auto& r : results) csv += r;
  write_file(output, csv);
  out << "wrote " << cells << " runs to " << output << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square min-sum bin packing toolkit", "sqpack"};
  app.require_subcommand(1);

  GeneratorSpec gen_spec;
  std::string family, lo, hi, gen_out;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", family, "adversarial, uniform, all_large or corner_mix")
      ->required()
      ->check(CLI::IsMember({"adversarial", "uniform", "all_large", "corner_mix"}));
  gen->add_option("--t", gen_spec.t, "adversarial parameter")->capture_default_str();
  gen->add_option("--n", gen_spec.n, "number of items");
  gen->add_option("--lo", lo, "exclusive lower size bound (uniform: 1/1000000, all_large: 1/2)");
  gen->add_option("--hi", hi, "inclusive upper size bound");
  gen->add_option("--seed", gen_spec.seed, "generator seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "instance file")->required();

  AlgoOptions solve_opts;
  PtasFlags solve_pf;
  std::string solve_file, solve_pack, solve_report;
  auto* solve = app.add_subcommand("solve", "Pack an instance");
  solve->add_option("--algo", solve_opts.algo, "algorithm")
      ->required()
      ->check(CLI::IsMember(algorithm_names()));
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_option("-o,--output", solve_pack, "packing file");
  solve->add_option("--report", solve_report, "CSV report");
  add_algo_flags(solve, solve_opts, solve_pf);

  std::string val_pack, val_inst;
  auto* val = app.add_subcommand("validate", "Check a packing file");
  val->add_option("packing", val_pack, "packing file")->required();
  val->add_option("--instance", val_inst, "instance file")->required();

  std::string bounds_file;
  auto* bounds = app.add_subcommand("bounds", "Print lower bounds and group statistics");
  bounds->add_option("file", bounds_file, "instance file")->required();

  std::string render_pack, render_inst, render_out;
  auto* render = app.add_subcommand("render", "Draw a packing as SVG");
  render->add_option("packing", render_pack, "packing file")->required();
  render->add_option("--instance", render_inst, "instance file")->required();
  render->add_option("-o,--output", render_out, "SVG file")->required();

  AlgoOptions bench_opts;
  PtasFlags bench_pf;
  std::string corpus, algos, bench_out;
  bool timing = false;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a corpus directory");
  bench->add_option("--corpus", corpus, "directory of .smsbpp files")->required();
  bench->add_option("--algos", algos, "comma-separated algorithm list")->required();
  bench->add_option("-o,--output", bench_out, "CSV file")->required();
  bench->add_flag("--timing", timing, "add a wall-clock micros column");
  add_algo_flags(bench, bench_opts, bench_pf);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      gen_spec.family = parse_family(family);
      if (!lo.empty()) gen_spec.lo = parse_rational_option(lo, "--lo");
      if (!hi.empty()) gen_spec.hi = parse_rational_option(hi, "--hi");
      if (gen_spec.family == Family::kAllLarge && lo.empty()) gen_spec.lo = Rational(1, 2);
      if (gen_spec.family == Family::kUniform && lo.empty()) gen_spec.lo = Rational(1, kSizeDenominator);
      return cmd_gen(gen_spec, gen_out, out);
    }
    if (*solve) {
      finalize_algo(solve_opts, solve_pf);
      return cmd_solve(solve_file, solve_opts, solve_pack, solve_report, out);
    }
    if (*val) return cmd_validate(val_pack, val_inst, out, err);
    if (*bounds) return cmd_bounds(bounds_file, out);
    if (*render) return cmd_render(render_pack, render_inst, render_out, out);
    if (*bench) return cmd_bench(corpus, algos, bench_out, timing, bench_opts, bench_pf, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace sqpack::cli
