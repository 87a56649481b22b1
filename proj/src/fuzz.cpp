#include <algorithm>
#include <numeric>
#include <ostream>

#include "parallel.hpp"
#include "splaylab/experiment.hpp"

namespace splaylab {

namespace {

constexpr Key kPreorderPattern[] = {2, 3, 1};
constexpr Key kPostorderPattern[] = {3, 1, 2};

struct Outcome {
  std::string check;
  CheckResult result;
};

// Everything the fuzzer asks of one permutation, routed by class.
std::vector<Outcome> check_permutation(std::span<const Key> perm, const FuzzConfig& cfg,
                                       bool paranoid, bool with_oracle) {
  std::vector<Outcome> out;
  out.push_back({"ancestor-precedence", check_ancestor_precedence(perm)});

  const bool pre = is_preorder(perm);
  const bool post = is_postorder(perm);
  if (with_oracle) {
    auto agree = [](bool fast, bool avoids, std::string_view what) {
      if (fast == avoids) return CheckResult::pass();
      return CheckResult::fail(0, std::string(what) + (fast ? " accepts" : " rejects") +
                                      " against the pattern oracle");
    };
    out.push_back({"recognizer-preorder",
                   agree(pre, !contains_pattern(perm, kPreorderPattern), "is_preorder")});
    out.push_back({"recognizer-postorder",
                   agree(post, !contains_pattern(perm, kPostorderPattern), "is_postorder")});
  }

  if (pre || post) {
    InstrumentOptions opts;
    opts.structural_checks = true;
    opts.reference_potential = true;
    opts.paranoid = paranoid;
    opts.variant = cfg.variant;
    const RunLedger ledger = instrumented_run(perm, opts);
    CheckResult run = CheckResult::pass();
    if (!ledger.violations.empty()) {
      const Violation& v = ledger.violations.front();
      run = CheckResult::fail(v.step, v.check + ": " + v.detail);
    }
    CheckResult bound = CheckResult::pass();
    for (const LedgerEntry& e : ledger.entries) {
      if (e.c > kAmortizedBound) {
        bound = CheckResult::fail(e.i, "c_i = " + std::to_string(e.c));
        break;
      }
    }
    if (pre) {
      out.push_back({"preorder-invariants", run});
      out.push_back({"preorder-amortized-bound", bound});
    }
    if (post) {
      out.push_back({"postorder-invariants", run});
      out.push_back({"postorder-amortized-bound", bound});
    }
  }
  if (pre) {
    out.push_back({"preorder-sub-root-rule", check_subroot_rule(perm, TraversalKind::kPreorder)});
  }
  if (post) {
    out.push_back({"postorder-sub-root-rule", check_subroot_rule(perm, TraversalKind::kPostorder)});
    out.push_back({"postorder-comb", check_comb(bst_of(perm), CombOrientation::kLeft)});
  }

  const std::size_t longest = decreasing_pattern_length(perm);
  for (std::size_t k : cfg.k_values) {
    if (longest + 1 <= k) {
      out.push_back({"k-shape-" + std::to_string(k), check_k_avoiding_shape(perm, k)});
    }
  }
  return out;
}

void record(FuzzReport& report, const Outcome& o, std::string_view origin, std::uint64_t seed,
            std::span<const Key> perm) {
  CheckTally& tally = report.checks[o.check];
  ++tally.runs;
  if (o.result) return;
  ++tally.violations;
  if (!tally.first) {
    tally.first = Counterexample{std::string(origin), perm.size(), seed, o.result.step,
                                 o.result.detail, Permutation(perm.begin(), perm.end())};
  }
}

void exhaustive(const FuzzConfig& cfg, FuzzReport& report) {
  report.preorder_counts.assign(cfg.max_exhaustive + 1, 0);
  report.postorder_counts.assign(cfg.max_exhaustive + 1, 0);
  for (std::size_t n = 0; n <= cfg.max_exhaustive; ++n) {
    Permutation perm = identity_permutation(n);
    do {
      for (const Outcome& o : check_permutation(perm, cfg, true, true)) {
        record(report, o, "exhaustive", 0, perm);
      }
      if (is_preorder(perm)) ++report.preorder_counts[n];
      if (is_postorder(perm)) ++report.postorder_counts[n];
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

struct TrialResult {
  std::vector<Outcome> outcomes;
  Permutation failing;  // kept only when something failed
};

void randomized(const FuzzConfig& cfg, Execution exec, FuzzReport& report) {
  if (cfg.trials == 0) return;
  struct Stream {
    SequenceKind kind;
    std::size_t k;
  };
  std::vector<Stream> streams = {{SequenceKind::kPreorder, 3},
                                 {SequenceKind::kPostorder, 3},
                                 {SequenceKind::kRandom, 3}};
  for (std::size_t k : cfg.k_values) streams.push_back({SequenceKind::kKIncreasing, k});

  for (const Stream& s : streams) {
    auto results = detail::for_each_trial(cfg.trials, exec, [&](std::size_t t) {
      const Permutation perm = gen_sequence(s.kind, cfg.n, cfg.seed + t, s.k);
      TrialResult r;
      r.outcomes = check_permutation(perm, cfg, false, false);
      const bool failed = std::any_of(r.outcomes.begin(), r.outcomes.end(),
                                      [](const Outcome& o) { return !o.result; });
      if (failed) r.failing = perm;
      return r;
    });
    for (std::size_t t = 0; t < results.size(); ++t) {
      for (const Outcome& o : results[t].outcomes) {
        record(report, o, "random-" + std::string(to_string(s.kind)), cfg.seed + t,
               results[t].failing);
      }
    }
  }
}

}  // namespace

bool FuzzReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& entry) { return entry.second.violations == 0; });
}

FuzzReport fuzz_invariants(const FuzzConfig& cfg, Execution exec) {
  if (cfg.max_exhaustive > 10) {
    throw Error(ErrorCode::kBadConfig, "exhaustive enumeration is limited to n <= 10");
  }
  if (cfg.trials > 0 && cfg.n < 1) throw Error(ErrorCode::kBadConfig, "n must be at least 1");
  for (std::size_t k : cfg.k_values) {
    if (k < 2) throw Error(ErrorCode::kBadConfig, "k must be at least 2");
  }
  FuzzReport report;
  exhaustive(cfg, report);
  randomized(cfg, exec, report);
  return report;
}

FuzzReport fuzz_invariants(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::kInvariantFuzz) {
    throw Error(ErrorCode::kBadConfig, "fuzz_invariants needs the fuzz kind");
  }
  FuzzConfig fc;
  fc.n = cfg.n;
  fc.trials = cfg.trials;
  fc.seed = cfg.seed;
  return fuzz_invariants(fc);
}

void write_fuzz_report(std::ostream& out, const FuzzReport& report) {
  for (std::size_t n = 0; n < report.preorder_counts.size(); ++n) {
    out << "n=" << n << " preorders=" << report.preorder_counts[n]
        << " postorders=" << report.postorder_counts[n] << '\n';
  }
  for (const auto& [name, tally] : report.checks) {
    out << name << " runs=" << tally.runs << " violations=" << tally.violations << '\n';
    if (tally.first) {
      const Counterexample& c = *tally.first;
      out << "  first: origin=" << c.origin << " n=" << c.n << " seed=" << c.seed
          << " step=" << c.step << " detail=\"" << c.detail << "\"\n";
      if (c.n <= 64) out << "  perm: " << format_permutation(c.perm) << '\n';
    }
  }
  out << (report.ok() ? "fuzz: ok" : "fuzz: VIOLATIONS") << '\n';
}

}  // namespace splaylab
