#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splaylab/balance.hpp"
#include "splaylab/instrument.hpp"
#include "splaylab/permutation.hpp"

namespace splaylab {

enum class SequenceKind { kPreorder, kPostorder, kSequential, kRandom, kKIncreasing };

enum class ExperimentKind {
  kPreorderInsert,
  kPostorderInsert,
  kBalancedTraversal,
  kSequential,
  kRandomControl,
  kInvariantFuzz,
};

// Start tree for traversal experiments. kSame is the insertion tree of the
// request sequence itself, so it reproduces insertion splaying.
enum class StartMode { kSame, kRandom, kPerfect };

// Throw BadConfig on unknown names.
SequenceKind parse_sequence_kind(std::string_view name);
ExperimentKind parse_experiment_kind(std::string_view name);
StartMode parse_start_mode(std::string_view name);
std::string_view to_string(SequenceKind kind);
std::string_view to_string(ExperimentKind kind);
std::string_view to_string(StartMode mode);

// Per-splay amortized cost bound asserted for traversal insertions.
inline constexpr std::int64_t kAmortizedBound = 6;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kPreorderInsert;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  StartMode start = StartMode::kSame;
  std::optional<Alpha> alpha;
  std::size_t trials = 1;
  bool paranoid = false;
  // Fill wall_time_ms. Timed output is not reproducible.
  bool timing = false;
  // Structural checkers run when n <= check_limit (always when paranoid).
  std::size_t check_limit = 1024;
};

// Throws BadConfig.
void validate_config(const ExperimentConfig& cfg);

struct ResultRow {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::size_t total_cost = 0;
  double cost_per_n = 0.0;
  std::optional<std::int64_t> max_amortized;
  std::optional<double> df_sum;
  bool invariants_ok = true;
  std::optional<double> wall_time_ms;
  std::vector<Violation> violations;
};

// PREORDER/POSTORDER come from a seeded random tree, RANDOM is a seeded
// uniform permutation, K_INCREASING merges k-1 increasing runs.
Permutation gen_sequence(SequenceKind kind, std::size_t n, std::uint64_t seed, std::size_t k = 3);

enum class Execution { kSerial, kParallel };

// Rows come back in trial order whatever the execution mode. Trial t uses
// seed + t. Throws BadConfig.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      Execution exec = Execution::kParallel);

inline constexpr std::string_view kCsvHeader =
    "kind,n,seed,trial,total_cost,cost_per_n,max_amortized,df_sum,invariants_ok,wall_time_ms";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct FuzzConfig {
  std::size_t max_exhaustive = 8;
  std::size_t trials = 1000;
  std::size_t n = 512;
  std::uint64_t seed = 0;
  std::vector<std::size_t> k_values{3, 4, 5};
  SplayVariant variant = SplayVariant::kStandard;
};

struct Counterexample {
  std::string origin;  // "exhaustive" or "random"
  std::size_t n = 0;
  std::uint64_t seed = 0;  // random trials only
  std::size_t step = 0;
  std::string detail;
  Permutation perm;
};

struct CheckTally {
  std::size_t runs = 0;
  std::size_t violations = 0;
  std::optional<Counterexample> first;
};

struct FuzzReport {
  std::map<std::string, CheckTally> checks;
  // Class sizes found by exhaustive enumeration, indexed by n.
  std::vector<std::size_t> preorder_counts;
  std::vector<std::size_t> postorder_counts;

  bool ok() const;
};

FuzzReport fuzz_invariants(const FuzzConfig& cfg, Execution exec = Execution::kParallel);

// Adapter for the generic experiment entry point; cfg.kind must be
// kInvariantFuzz. n, trials and seed carry over.
FuzzReport fuzz_invariants(const ExperimentConfig& cfg);

void write_fuzz_report(std::ostream& out, const FuzzReport& report);

}  // namespace splaylab
