// splaylab: sequence generator, experiment runner, recognizer and fuzzer.
//
// Exit status: 0 when every check held, 1 on a violation, 2 on a
// configuration or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "splaylab/experiment.hpp"

namespace {

using namespace splaylab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

// Violations printed per run before the rest are summarized.
constexpr std::size_t kMaxReported = 10;

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t k = 3;
};

struct RunArgs {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string start = "same";
  std::size_t trials = 1;
  bool paranoid = false;
  bool timing = false;
  bool serial = false;
  std::optional<std::string> alpha;
  std::size_t check_limit = 1024;
  std::string csv;
};

struct CheckArgs {
  std::string file;
  std::string cls;
  std::size_t k = 3;
  std::optional<std::string> ledger;
};

struct FuzzArgs {
  FuzzConfig cfg;
  bool inject_fault = false;
  bool serial = false;
};

int do_gen(const GenArgs& a) {
  const Permutation perm = gen_sequence(parse_sequence_kind(a.kind), a.n, a.seed, a.k);
  std::cout << format_permutation(perm) << '\n';
  return kExitOk;
}

int do_run(const RunArgs& a) {
  ExperimentConfig cfg;
  cfg.kind = parse_experiment_kind(a.kind);
  cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.start = parse_start_mode(a.start);
  if (a.alpha) cfg.alpha = Alpha::parse(*a.alpha);
  cfg.trials = a.trials;
  cfg.paranoid = a.paranoid;
  cfg.timing = a.timing;
  cfg.check_limit = a.check_limit;
  validate_config(cfg);

  const auto rows = run_experiment(cfg, a.serial ? Execution::kSerial : Execution::kParallel);

  if (a.csv == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(a.csv, std::ios::binary);
    if (!out) throw Error(ErrorCode::kBadConfig, "cannot open " + a.csv + " for writing");
    write_csv(out, rows);
    if (!out.flush()) throw Error(ErrorCode::kBadConfig, "write to " + a.csv + " failed");
  }

  std::size_t failed = 0;
  std::size_t reported = 0;
  for (const ResultRow& row : rows) {
    if (row.invariants_ok) continue;
    ++failed;
    for (const Violation& v : row.violations) {
      if (reported++ >= kMaxReported) break;
      std::cerr << row.kind << " trial " << row.trial << " seed " << row.seed + row.trial
                << " step " << v.step << ": " << v.check << ": " << v.detail << '\n';
    }
  }
  if (failed > 0) {
    std::cerr << failed << " of " << rows.size() << " rows violated a check\n";
    return kExitViolation;
  }
  return kExitOk;
}

Permutation read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadConfig, "cannot open " + path);
  return read_permutation(in);
}

int do_check(const CheckArgs& a) {
  const Permutation perm = read_file(a.file);
  std::vector<std::pair<std::string, CheckResult>> results;

  if (a.cls == "preorder" || a.cls == "postorder") {
    const bool pre = a.cls == "preorder";
    if (!(pre ? is_preorder(perm) : is_postorder(perm))) {
      std::cout << "class: not a " << a.cls << '\n';
      return kExitViolation;
    }
    std::cout << "class: " << a.cls << '\n';
    InstrumentOptions opts;
    opts.reference_potential = true;
    const RunLedger ledger = instrumented_run(perm, opts);
    if (a.ledger) {
      std::ofstream out(*a.ledger);
      if (!out) throw Error(ErrorCode::kBadConfig, "cannot open " + *a.ledger + " for writing");
      write_ledger_csv(out, ledger);
    }
    CheckResult run = CheckResult::pass();
    if (!ledger.violations.empty()) {
      const Violation& v = ledger.violations.front();
      run = CheckResult::fail(v.step, v.check + ": " + v.detail);
    }
    results.emplace_back("invariants", run);
    for (const LedgerEntry& e : ledger.entries) {
      if (e.c > kAmortizedBound) {
        results.emplace_back("amortized-bound",
                             CheckResult::fail(e.i, "c_i = " + std::to_string(e.c)));
        break;
      }
    }
    results.emplace_back("sub-root-rule",
                         check_subroot_rule(perm, pre ? TraversalKind::kPreorder
                                                      : TraversalKind::kPostorder));
    if (!pre) results.emplace_back("comb", check_comb(bst_of(perm), CombOrientation::kLeft));
    std::cout << "total_cost: " << ledger.total_actual() << '\n'
              << "max_amortized: " << ledger.max_amortized() << '\n';
  } else if (a.cls == "k-increasing") {
    if (a.k < 2) throw Error(ErrorCode::kBadConfig, "--k must be at least 2");
    require_permutation(perm);
    const std::size_t longest = decreasing_pattern_length(perm);
    if (longest + 1 > a.k) {
      std::cout << "class: longest decreasing subsequence " << longest << " exceeds k-1\n";
      return kExitViolation;
    }
    std::cout << "class: " << a.k << "-increasing\n";
    results.emplace_back("k-shape", check_k_avoiding_shape(perm, a.k));
  } else {
    throw Error(ErrorCode::kBadConfig, "unknown class '" + a.cls + "'");
  }

  bool ok = true;
  for (const auto& [name, r] : results) {
    std::cout << name << ": " << (r ? "ok" : "FAIL");
    if (!r) std::cout << " (step " << r.step << ": " << r.detail << ')';
    std::cout << '\n';
    ok = ok && r.ok;
  }
  return ok ? kExitOk : kExitViolation;
}

int do_fuzz(FuzzArgs a) {
  if (a.inject_fault) a.cfg.variant = SplayVariant::kMoveToRoot;
  const FuzzReport report =
      fuzz_invariants(a.cfg, a.serial ? Execution::kSerial : Execution::kParallel);
  write_fuzz_report(std::cout, report);
  return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instrumented splay-tree experiments"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Print a generated request sequence");
  gen_cmd->add_option("--kind", gen.kind, "preorder|postorder|sequential|random|k-increasing")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Sequence length")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->envname("SPLAYLAB_SEED");
  gen_cmd->add_option("--k", gen.k, "k for k-increasing sequences");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV rows");
  run_cmd->add_option("--kind", run.kind, "preorder|postorder|balanced|sequential|random")
      ->required();
  run_cmd->add_option("--n", run.n, "Problem size")->required();
  run_cmd->add_option("--seed", run.seed, "Base seed; trial t uses seed + t")
      ->envname("SPLAYLAB_SEED");
  run_cmd->add_option("--start", run.start, "Start tree for balanced: same|random|perfect");
  run_cmd->add_option("--trials", run.trials, "Number of trials");
  run_cmd->add_flag("--paranoid", run.paranoid, "Check invariants after every splay step");
  run_cmd->add_flag("--timing", run.timing, "Fill wall_time_ms (output no longer reproducible)");
  run_cmd->add_flag("--serial", run.serial, "Run trials on one thread");
  run_cmd->add_option("--alpha", run.alpha, "Draw the balanced target from BB[alpha]");
  run_cmd->add_option("--check-limit", run.check_limit,
                      "Largest n for per-splay structural checks");
  run_cmd->add_option("--csv", run.csv, "Output path, or - for stdout")->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Classify a permutation and check its invariants");
  check_cmd->add_option("--file", check.file, "Whitespace-separated permutation")->required();
  check_cmd->add_option("--class", check.cls, "preorder|postorder|k-increasing")->required();
  check_cmd->add_option("--k", check.k, "k for the k-increasing class");
  check_cmd->add_option("--ledger", check.ledger, "Write the per-step ledger CSV here");

  FuzzArgs fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Exhaustive and randomized invariant checks");
  fuzz_cmd->add_option("--max-exhaustive", fuzz.cfg.max_exhaustive,
                       "Enumerate all permutations up to this length");
  fuzz_cmd->add_option("--trials", fuzz.cfg.trials, "Random trials per class");
  fuzz_cmd->add_option("--n", fuzz.cfg.n, "Length of random permutations");
  fuzz_cmd->add_option("--seed", fuzz.cfg.seed, "Base seed")->envname("SPLAYLAB_SEED");
  fuzz_cmd->add_flag("--inject-fault", fuzz.inject_fault,
                     "Splay with move-to-root instead (negative control)");
  fuzz_cmd->add_flag("--serial", fuzz.serial, "Run trials on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen_cmd) return do_gen(gen);
    if (*run_cmd) return do_run(run);
    if (*check_cmd) return do_check(check);
    return do_fuzz(fuzz);
  } catch (const Error& e) {
    std::cerr << "splaylab: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvariantViolation ? kExitViolation : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "splaylab: " << e.what() << '\n';
    return kExitConfig;
  }
}
