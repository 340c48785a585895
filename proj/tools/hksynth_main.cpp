// Command-line front end: synthesis runs, batch benchmarking, certificate
// checking, and exhaustive truth decisions for small instances.
//
// Exit codes follow the solver-competition convention: 10 for a solved
// positive (synthesized / true), 20 for a refuted instance, 0 for an
// honest unknown, 1 for usage or I/O errors. The certificate checker
// uses 0 for valid and 3 for invalid.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hksynth/brute_force.hpp"
#include "hksynth/dqdimacs.hpp"
#include "hksynth/engine.hpp"
#include "hksynth/hfn_io.hpp"

namespace {

constexpr int kExitSolvedPositive = 10;
constexpr int kExitSolvedNegative = 20;
constexpr int kExitUnknown = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidCertificate = 3;

using namespace hksynth;

std::uint64_t effective_seed(std::uint64_t seed) {
  if (seed != 0) return seed;
  auto now = std::chrono::system_clock::now().time_since_epoch().count();
  return static_cast<std::uint64_t>(now) | 1;
}

const char* outcome_name(SynthKind k) {
  switch (k) {
    case SynthKind::kSynthesized: return "SYNTHESIZED";
    case SynthKind::kFalse: return "FALSE";
    case SynthKind::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

void print_stats(std::ostream& out, const SynthStats& st) {
  out << "STATS: iterations=" << st.iterations << " samples=" << st.sample_rows
      << " solver_calls=" << st.solver_calls << " maxsat_calls=" << st.maxsat_calls
      << " repair_probes=" << st.repair_probes << " relearned=" << st.relearned
      << " seconds=" << st.seconds << '\n';
}

void print_witness(std::ostream& out, const Assignment& a) {
  out << "WITNESS:";
  for (const auto& [x, value] : a) out << ' ' << x << '=' << (value ? 1 : 0);
  out << '\n';
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string instance;
  std::string output;
  std::string dump_samples;
  std::string dump_trees;
  std::string trace_repairs;
  std::string inject_candidates;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  double timeout = 0;
  std::size_t max_iterations = 1000;
  bool strict = false;
};

int run_synth(const SynthArgs& a) {
  DqbfInstance inst = parse_dqdimacs_file(a.instance);
  inst.validate();

  EngineConfig cfg;
  cfg.seed = effective_seed(a.seed);
  cfg.sample_target = a.samples;
  cfg.timeout_seconds = a.timeout;
  cfg.max_iterations = a.max_iterations;
  cfg.plain_loop = a.strict;
  cfg.dump_trees_dir = a.dump_trees;

  std::ofstream samples_out, trace_out;
  if (!a.dump_samples.empty()) {
    samples_out = open_or_throw(a.dump_samples);
    cfg.samples_out = &samples_out;
  }
  if (!a.trace_repairs.empty()) {
    trace_out = open_or_throw(a.trace_repairs);
    cfg.repair_trace = &trace_out;
  }
  if (!a.inject_candidates.empty()) {
    HfnDocument doc = read_henkin_vector_file(a.inject_candidates);
    for (const auto& [y, f] : doc.defs) cfg.injected_candidates[y] = f;
  }

  SynthResult r = synthesize(inst, cfg);

  std::cout << "RESULT: " << outcome_name(r.kind) << '\n';
  switch (r.kind) {
    case SynthKind::kSynthesized: {
      print_stats(std::cout, r.stats);
      if (a.output.empty()) {
        write_henkin_vector(inst, r.vector, std::cout);
      } else {
        std::ofstream out = open_or_throw(a.output);
        write_henkin_vector(inst, r.vector, out);
        if (!out) throw std::runtime_error("failed writing " + a.output);
      }
      return kExitSolvedPositive;
    }
    case SynthKind::kFalse:
      print_witness(std::cout, r.false_witness);
      print_stats(std::cout, r.stats);
      return kExitSolvedNegative;
    case SynthKind::kUnknown:
      std::cout << "DIAGNOSIS: " << r.unknown_reason << '\n';
      print_stats(std::cout, r.stats);
      return kExitUnknown;
  }
  return kExitUsage;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> inputs;
  std::string csv;
  std::string cactus;
  double timeout = 60;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::size_t max_iterations = 1000;
  unsigned jobs = 1;
  bool strict = false;
};

struct RunRecord {
  std::string instance;
  std::string outcome;
  double seconds = 0;
  std::size_t iterations = 0;
  std::uint64_t solver_calls = 0;
};

std::vector<std::string> collect_instances(const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.is_regular_file() && entry.path().extension() == ".dqdimacs")
          found.push_back(entry.path().string());
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(in)) {
      paths.push_back(in);
    } else {
      throw std::runtime_error("no such file or directory: " + in);
    }
  }
  // an empty directory is a valid (empty) batch
  return paths;
}

void write_bench_csv(std::ostream& out, const std::vector<RunRecord>& records,
                     std::uint64_t seed) {
  out << "instance,outcome,seconds,iterations,solver_calls,seed\n";
  for (const RunRecord& r : records)
    out << r.instance << ',' << r.outcome << ',' << r.seconds << ',' << r.iterations << ','
        << r.solver_calls << ',' << seed << '\n';
}

void write_bench_summary(std::ostream& out, const std::vector<RunRecord>& records) {
  std::map<std::string, std::size_t> counts;
  std::vector<double> times;
  for (const RunRecord& r : records) {
    ++counts[r.outcome];
    times.push_back(r.seconds);
  }
  std::sort(times.begin(), times.end());
  double median = times.empty() ? 0
                  : times.size() % 2 ? times[times.size() / 2]
                                     : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
  out << "SUMMARY: " << records.size() << " instances";
  for (const auto& [name, n] : counts) out << ", " << name << '=' << n;
  if (!times.empty()) out << ", min=" << times.front() << "s, median=" << median << "s";
  out << '\n';
}

void write_cactus(std::ostream& out, const std::vector<RunRecord>& records) {
  // instances solved within a cumulative budget, sorted by their own time
  std::vector<double> solved;
  for (const RunRecord& r : records)
    if (r.outcome == "SYNTHESIZED" || r.outcome == "FALSE") solved.push_back(r.seconds);
  std::sort(solved.begin(), solved.end());
  out << "solved,cumulative_seconds\n";
  double cum = 0;
  for (std::size_t i = 0; i < solved.size(); ++i) {
    cum += solved[i];
    out << i + 1 << ',' << cum << '\n';
  }
}

int run_bench(const BenchArgs& a) {
  std::vector<std::string> paths = collect_instances(a.inputs);
  std::vector<RunRecord> records(paths.size());
  std::uint64_t seed = effective_seed(a.seed);

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      RunRecord rec;
      rec.instance = std::filesystem::path(paths[i]).filename().string();
      auto begin = std::chrono::steady_clock::now();
      try {
        DqbfInstance inst = parse_dqdimacs_file(paths[i]);
        inst.validate();
        EngineConfig cfg;
        cfg.seed = seed;
        cfg.sample_target = a.samples;
        cfg.timeout_seconds = a.timeout;
        cfg.max_iterations = a.max_iterations;
        cfg.plain_loop = a.strict;
        SynthResult r = synthesize(inst, cfg);
        rec.outcome = outcome_name(r.kind);
        rec.seconds = r.stats.seconds;
        rec.iterations = r.stats.iterations;
        rec.solver_calls = r.stats.solver_calls;
      } catch (const std::exception& e) {
        bool bad_input = dynamic_cast<const ParseError*>(&e) != nullptr ||
                         dynamic_cast<const std::invalid_argument*>(&e) != nullptr;
        rec.outcome = bad_input ? "parse_error" : "error";
        rec.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << rec.instance << ": " << e.what() << '\n';
      }
      records[i] = std::move(rec);
    }
  };

  unsigned jobs = std::max(1u, a.jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  if (a.csv.empty()) {
    write_bench_csv(std::cout, records, seed);
    write_bench_summary(std::cerr, records);
  } else {
    std::ofstream out = open_or_throw(a.csv);
    write_bench_csv(out, records, seed);
    write_bench_summary(std::cout, records);
  }
  if (!a.cactus.empty()) {
    std::ofstream out = open_or_throw(a.cactus);
    write_cactus(out, records);
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------

int report_invalid(const std::string& why) {
  std::cout << "RESULT: INVALID\n";
  std::cout << "DIAGNOSIS: " << why << '\n';
  return kExitInvalidCertificate;
}

int run_verify(const std::string& instance_path, const std::string& functions_path) {
  DqbfInstance inst = parse_dqdimacs_file(instance_path);
  inst.validate();
  HfnDocument doc = read_henkin_vector_file(functions_path);

  HenkinVector v;
  v.resolved = true;
  for (const auto& [y, f] : doc.defs) {
    if (!inst.is_existential(y))
      return report_invalid("definition for non-existential variable " + std::to_string(y));
    if (!v.functions.emplace(y, f).second)
      return report_invalid("duplicate definition for " + std::to_string(y));
  }
  for (Var y : inst.existentials)
    if (!v.functions.count(y)) return report_invalid("no function for " + std::to_string(y));
  try {
    validate_vector(inst, v);
  } catch (const std::invalid_argument& e) {
    return report_invalid(e.what());
  }

  if (inst.universals.size() <= BruteOptions{}.max_universal_bits) {
    Assignment failing;
    if (check_vector(inst, v, &failing)) {
      std::cout << "RESULT: VALID\n";
      return 0;
    }
    std::cout << "RESULT: INVALID\n";
    print_witness(std::cout, failing);
    return kExitInvalidCertificate;
  }

  // too wide to enumerate; fall back to the unsatisfiability check
  VarAllocator fresh(inst.matrix.num_vars + 1);
  ErrorFormula ef = build_error_formula(inst, v, fresh);
  SatResult sr = check_sat({ef.clauses, {}, ef.num_vars});
  if (sr.status == SatStatus::kUnsat) {
    std::cout << "RESULT: VALID\n";
    return 0;
  }
  std::cout << "RESULT: INVALID\n";
  Assignment failing;
  for (Var x : inst.universals) failing[x] = sr.model.at(x);
  print_witness(std::cout, failing);
  return kExitInvalidCertificate;
}

// ---- decide ---------------------------------------------------------------

int run_decide(const std::string& instance_path) {
  DqbfInstance inst = parse_dqdimacs_file(instance_path);
  inst.validate();

  DecideResult d = decide_truth(inst);
  if (!d.is_true) {
    std::cout << "RESULT: FALSE\n";
    return kExitSolvedNegative;
  }
  std::cout << "RESULT: TRUE\n";
  HenkinVector v;
  v.resolved = true;
  for (const FunctionTable& t : d.witness) v.functions[t.y] = fold_constants(table_to_expr(t));
  write_henkin_vector(inst, v, std::cout);
  return kExitSolvedPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Henkin function synthesis for dependency-quantified boolean formulas"};
  app.require_subcommand(1);

  SynthArgs sa;
  CLI::App* synth = app.add_subcommand("synth", "synthesize a function vector for one instance");
  synth->add_option("instance", sa.instance, "DQDIMACS input")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", sa.seed, "RNG seed; 0 draws one from the clock")
      ->capture_default_str();
  synth->add_option("--samples", sa.samples, "sample rows to draw (0 = scaled to variable count)")
      ->capture_default_str();
  synth->add_option("--timeout", sa.timeout, "wall-clock budget in seconds (0 = none)")
      ->capture_default_str();
  synth->add_option("--max-iterations", sa.max_iterations, "refinement rounds before giving up")
      ->capture_default_str();
  synth->add_flag("--strict-paper", sa.strict,
                  "plain refinement loop only: no resampling or relearning fallback");
  synth->add_option("--dump-samples", sa.dump_samples, "write the sample table CSV to this file");
  synth->add_option("--dump-trees", sa.dump_trees,
                    "write one learned-tree file per variable into this directory");
  synth->add_option("--trace-repairs", sa.trace_repairs,
                    "write one line per repair probe to this file");
  synth->add_option("--output", sa.output, "write the function vector here instead of stdout");
  synth->add_option("--inject-candidates", sa.inject_candidates,
                    "seed candidate functions from this vector file (testing hook)")
      ->check(CLI::ExistingFile);

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "run a batch of instances and tabulate results");
  bench->add_option("inputs", ba.inputs, "instance files or directories of .dqdimacs files")
      ->required();
  bench->add_option("--timeout", ba.timeout, "per-instance budget in seconds")
      ->capture_default_str();
  bench->add_option("--seed", ba.seed, "RNG seed; 0 draws one from the clock")
      ->capture_default_str();
  bench->add_option("--samples", ba.samples, "sample rows to draw (0 = scaled)")
      ->capture_default_str();
  bench->add_option("--max-iterations", ba.max_iterations, "refinement rounds per instance")
      ->capture_default_str();
  bench->add_option("--jobs", ba.jobs, "parallel workers")->capture_default_str();
  bench->add_flag("--strict-paper", ba.strict, "plain refinement loop only");
  bench->add_option("--csv", ba.csv, "write records here (default: stdout)");
  bench->add_option("--cactus", ba.cactus, "write cumulative-time plot data here");

  std::string verify_instance, verify_functions;
  CLI::App* verify = app.add_subcommand("verify", "check a function vector against its instance");
  verify->add_option("instance", verify_instance, "DQDIMACS input")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("functions", verify_functions, "function vector file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string decide_instance;
  CLI::App* decide =
      app.add_subcommand("decide", "decide a small instance by exhaustive enumeration");
  decide->add_option("instance", decide_instance, "DQDIMACS input")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth->parsed()) return run_synth(sa);
    if (bench->parsed()) return run_bench(ba);
    if (verify->parsed()) return run_verify(verify_instance, verify_functions);
    if (decide->parsed()) return run_decide(decide_instance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
