#include "splaylab/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>

#include "parallel.hpp"
#include "splaylab/rng.hpp"
#include "splaylab/splay.hpp"

namespace splaylab {

namespace {

template <typename Enum, std::size_t N>
Enum lookup(std::string_view name, const std::pair<std::string_view, Enum> (&table)[N],
            std::string_view what) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  std::string choices;
  for (const auto& [key, value] : table) {
    if (!choices.empty()) choices += '|';
    choices += key;
  }
  throw Error(ErrorCode::kBadConfig,
              "unknown " + std::string(what) + " '" + std::string(name) + "' (" + choices + ")");
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

constexpr std::pair<std::string_view, SequenceKind> kSequenceKinds[] = {
    {"preorder", SequenceKind::kPreorder},
    {"postorder", SequenceKind::kPostorder},
    {"sequential", SequenceKind::kSequential},
    {"random", SequenceKind::kRandom},
    {"k-increasing", SequenceKind::kKIncreasing},
};

constexpr std::pair<std::string_view, ExperimentKind> kExperimentKinds[] = {
    {"preorder", ExperimentKind::kPreorderInsert},
    {"postorder", ExperimentKind::kPostorderInsert},
    {"balanced", ExperimentKind::kBalancedTraversal},
    {"sequential", ExperimentKind::kSequential},
    {"random", ExperimentKind::kRandomControl},
    {"fuzz", ExperimentKind::kInvariantFuzz},
};

constexpr std::pair<std::string_view, StartMode> kStartModes[] = {
    {"same", StartMode::kSame},
    {"random", StartMode::kRandom},
    {"perfect", StartMode::kPerfect},
};

// Offset separating the random start tree's stream from the sequence's.
constexpr std::uint64_t kStartTreeSalt = 0x9E3779B97F4A7C15ULL;

}  // namespace

SequenceKind parse_sequence_kind(std::string_view name) {
  return lookup(name, kSequenceKinds, "sequence kind");
}
ExperimentKind parse_experiment_kind(std::string_view name) {
  return lookup(name, kExperimentKinds, "experiment kind");
}
StartMode parse_start_mode(std::string_view name) { return lookup(name, kStartModes, "start mode"); }
std::string_view to_string(SequenceKind kind) { return name_of(kind, kSequenceKinds); }
std::string_view to_string(ExperimentKind kind) { return name_of(kind, kExperimentKinds); }
std::string_view to_string(StartMode mode) { return name_of(mode, kStartModes); }

Permutation gen_sequence(SequenceKind kind, std::size_t n, std::uint64_t seed, std::size_t k) {
  switch (kind) {
    case SequenceKind::kPreorder:
      return preorder(gen_random_tree(n, seed));
    case SequenceKind::kPostorder:
      return postorder(gen_random_tree(n, seed));
    case SequenceKind::kSequential:
      return identity_permutation(n);
    case SequenceKind::kRandom: {
      Rng rng(seed);
      return random_permutation(n, rng);
    }
    case SequenceKind::kKIncreasing: {
      Rng rng(seed);
      return random_k_increasing(n, k, rng);
    }
  }
  throw Error(ErrorCode::kBadConfig, "unhandled sequence kind");
}

void validate_config(const ExperimentConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::kBadConfig, msg); };
  if (cfg.n < 1) bad("n must be at least 1");
  if (cfg.n >= std::numeric_limits<std::uint32_t>::max()) bad("n too large");
  if (cfg.trials < 1) bad("trials must be at least 1");
  if (cfg.kind == ExperimentKind::kInvariantFuzz) bad("fuzz runs through fuzz_invariants");
  if (cfg.kind != ExperimentKind::kBalancedTraversal) {
    if (cfg.start != StartMode::kSame) bad("--start applies only to the balanced kind");
    if (cfg.alpha) bad("--alpha applies only to the balanced kind");
    return;
  }
  const bool needs_perfect = !cfg.alpha || cfg.start == StartMode::kPerfect ||
                             3 * cfg.alpha->num() > cfg.alpha->den();
  if (needs_perfect && !is_perfect_size(cfg.n)) {
    bad("balanced traversal needs n = 2^k - 1 here, got " + std::to_string(cfg.n));
  }
}

namespace {

using Clock = std::chrono::steady_clock;

bool bounded_kind(ExperimentKind kind) {
  return kind == ExperimentKind::kPreorderInsert || kind == ExperimentKind::kPostorderInsert ||
         kind == ExperimentKind::kSequential;
}

ResultRow insertion_row(const ExperimentConfig& cfg, std::size_t trial) {
  const std::uint64_t seed = cfg.seed + trial;
  ResultRow row;
  row.n = cfg.n;
  row.seed = cfg.seed;
  row.trial = trial;

  Permutation perm;
  bool member = true;
  switch (cfg.kind) {
    case ExperimentKind::kPreorderInsert:
      row.kind = "preorder";
      perm = gen_sequence(SequenceKind::kPreorder, cfg.n, seed);
      member = is_preorder(perm);
      break;
    case ExperimentKind::kPostorderInsert:
      row.kind = "postorder";
      perm = gen_sequence(SequenceKind::kPostorder, cfg.n, seed);
      member = is_postorder(perm);
      break;
    case ExperimentKind::kSequential:
      row.kind = "sequential";
      perm = gen_sequence(SequenceKind::kSequential, cfg.n, seed);
      member = is_preorder(perm) && is_postorder(perm);
      break;
    default:
      row.kind = "random";
      perm = gen_sequence(SequenceKind::kRandom, cfg.n, seed);
      break;
  }
  if (!member) row.violations.push_back({0, "generator-class", "sequence fails its recognizer"});

  InstrumentOptions opts;
  opts.structural_checks = cfg.paranoid || cfg.n <= cfg.check_limit;
  opts.reference_potential = opts.structural_checks;
  opts.paranoid = cfg.paranoid;
  RunLedger ledger = instrumented_run(perm, opts);
  for (Violation& v : ledger.violations) row.violations.push_back(std::move(v));

  const std::int64_t phi_n = ledger.entries.empty() ? ledger.phi0 : ledger.entries.back().phi;
  const auto total = static_cast<std::int64_t>(ledger.total_actual());
  if (ledger.phi0 != 0 || phi_n != 0) {
    row.violations.push_back({0, "potential-endpoints",
                              "phi_0 = " + std::to_string(ledger.phi0) +
                                  ", phi_n = " + std::to_string(phi_n)});
  }
  if (total != ledger.total_amortized() + ledger.phi0 - phi_n) {
    row.violations.push_back({0, "telescoping", "sum t_i != sum c_i + phi_0 - phi_n"});
  }

  if (bounded_kind(cfg.kind)) {
    for (const LedgerEntry& e : ledger.entries) {
      if (e.c > kAmortizedBound) {
        row.violations.push_back({e.i, "amortized-bound",
                                  "c_i = " + std::to_string(e.c) + " at key " +
                                      std::to_string(e.key)});
        break;
      }
    }
    if (total > kAmortizedBound * static_cast<std::int64_t>(cfg.n)) {
      row.violations.push_back({0, "total-bound", "total " + std::to_string(total) + " > 6n"});
    }
  }
  if (cfg.kind == ExperimentKind::kSequential && total != 2 * static_cast<std::int64_t>(cfg.n) - 1) {
    row.violations.push_back({0, "sequential-cost", "total " + std::to_string(total) + " != 2n-1"});
  }

  row.total_cost = ledger.total_actual();
  row.max_amortized = ledger.max_amortized();
  return row;
}

std::vector<ResultRow> balanced_rows(const ExperimentConfig& cfg, std::size_t trial) {
  const std::uint64_t seed = cfg.seed + trial;
  const Tree target = cfg.alpha ? gen_weight_balanced_tree(cfg.n, *cfg.alpha, seed)
                                : gen_perfect_tree(cfg.n);
  const bool target_ok = is_weight_balanced(target, cfg.alpha.value_or(kDefaultAlpha));

  std::vector<ResultRow> rows;
  for (TraversalKind order : {TraversalKind::kPreorder, TraversalKind::kPostorder}) {
    const bool pre = order == TraversalKind::kPreorder;
    const Permutation requests = pre ? preorder(target) : postorder(target);

    Tree start;
    switch (cfg.start) {
      case StartMode::kSame: start = bst_of(requests); break;
      case StartMode::kPerfect: start = gen_perfect_tree(cfg.n); break;
      case StartMode::kRandom: start = gen_random_tree(cfg.n, seed + kStartTreeSalt); break;
    }

    ResultRow row;
    row.kind = pre ? "balanced-preorder" : "balanced-postorder";
    row.n = cfg.n;
    row.seed = cfg.seed;
    row.trial = trial;
    row.df_sum = df_sum(start, requests).value;

    const SequenceCost cost = splay_sequence(start, requests);
    row.total_cost = cost.total;

    if (!target_ok) row.violations.push_back({0, "weight-balance", "target tree not in BB[alpha]"});
    if (!(pre ? is_preorder(requests) : is_postorder(requests))) {
      row.violations.push_back({0, "generator-class", "sequence fails its recognizer"});
    }
    if (ValidationReport v = start.validate(); !v.ok()) {
      row.violations.push_back({0, "bst-valid", v.message});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> run_trial(const ExperimentConfig& cfg, std::size_t trial) {
  const auto begin = Clock::now();
  std::vector<ResultRow> rows;
  if (cfg.kind == ExperimentKind::kBalancedTraversal) {
    rows = balanced_rows(cfg, trial);
  } else {
    rows.push_back(insertion_row(cfg, trial));
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
  for (ResultRow& row : rows) {
    row.cost_per_n = static_cast<double>(row.total_cost) / static_cast<double>(row.n);
    row.invariants_ok = row.violations.empty();
    if (cfg.timing) row.wall_time_ms = ms;
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, Execution exec) {
  validate_config(cfg);
  auto per_trial = detail::for_each_trial(
      cfg.trials, exec, [&](std::size_t t) { return run_trial(cfg, t); });
  std::vector<ResultRow> rows;
  for (auto& trial_rows : per_trial) {
    for (ResultRow& r : trial_rows) rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.kind << ',' << r.n << ',' << r.seed << ',' << r.trial << ',' << r.total_cost << ','
        << fixed6(r.cost_per_n) << ',';
    if (r.max_amortized) out << *r.max_amortized;
    out << ',';
    if (r.df_sum) out << fixed6(*r.df_sum);
    out << ',' << (r.invariants_ok ? "true" : "false") << ',';
    if (r.wall_time_ms) out << fixed6(*r.wall_time_ms);
    out << '\n';
  }
}

}  // namespace splaylab
