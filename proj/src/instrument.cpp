#include "splaylab/instrument.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace splaylab {

MarkState::MarkState(Tree original)
    : current_(original),
      original_(std::move(original)),
      touched_(original_.size(), false) {
  rebuild_counts();
}

MarkState MarkState::from_parts(Tree current, Tree original, std::vector<bool> touched) {
  if (current.size() != original.size() || touched.size() != original.size()) {
    throw Error(ErrorCode::kLengthMismatch, "mark state parts disagree in size");
  }
  MarkState s(std::move(original));
  s.current_ = std::move(current);
  s.touched_ = std::move(touched);
  s.rebuild_counts();
  return s;
}

void MarkState::rebuild_counts() {
  untouched_below_.assign(current_.size(), 0);
  touched_count_ = 0;
  phi_nodes_ = 0;
  touched_min_ = 0;
  touched_max_ = 0;
  for (std::size_t i = 0; i < touched_.size(); ++i) {
    if (!touched_[i]) continue;
    Key k = current_.key(static_cast<NodeHandle>(i));
    touched_min_ = touched_count_ == 0 ? k : std::min(touched_min_, k);
    touched_max_ = touched_count_ == 0 ? k : std::max(touched_max_, k);
    ++touched_count_;
  }

  std::vector<NodeHandle> order;
  std::vector<NodeHandle> stack;
  if (!current_.empty()) stack.push_back(current_.root());
  while (!stack.empty()) {
    NodeHandle h = stack.back();
    stack.pop_back();
    order.push_back(h);
    if (current_.left(h) != kNone) stack.push_back(current_.left(h));
    if (current_.right(h) != kNone) stack.push_back(current_.right(h));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeHandle h = *it;
    untouched_below_[index_of(h)] = (touched(h) ? 0 : 1) + untouched_in(current_.left(h)) +
                                    untouched_in(current_.right(h));
    if (contributes(h)) ++phi_nodes_;
  }
}

void MarkState::relink(NodeHandle h) {
  const bool before = contributes(h);
  untouched_below_[index_of(h)] = (touched(h) ? 0 : 1) + untouched_in(current_.left(h)) +
                                  untouched_in(current_.right(h));
  const bool after = contributes(h);
  if (before != after) {
    if (after) {
      ++phi_nodes_;
    } else {
      --phi_nodes_;
    }
  }
}

void MarkState::touch(NodeHandle h) {
  current_.node(h);
  if (touched(h)) {
    throw Error(ErrorCode::kInvariantViolation,
                "key " + std::to_string(current_.key(h)) + " touched twice");
  }
  touched_[index_of(h)] = true;
  const Key k = current_.key(h);
  touched_min_ = touched_count_ == 0 ? k : std::min(touched_min_, k);
  touched_max_ = touched_count_ == 0 ? k : std::max(touched_max_, k);
  ++touched_count_;

  --untouched_below_[index_of(h)];
  if (contributes(h)) ++phi_nodes_;
  for (NodeHandle v = current_.parent(h); v != kNone; v = current_.parent(v)) {
    const bool before = contributes(v);
    --untouched_below_[index_of(v)];
    if (before && !contributes(v)) --phi_nodes_;
  }
}

SplayCost MarkState::splay(NodeHandle h, SplayVariant variant) {
  NullObserver none;
  return splay(h, none, variant);
}

std::vector<NodeHandle> sub_roots(const MarkState& state) {
  const Tree& t = state.tree();
  std::vector<NodeHandle> out;
  if (state.touched_count() == 0) {
    if (!state.original().empty()) out.push_back(state.original().root());
    return out;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    NodeHandle p = t.parent(h);
    if (!state.touched(h) && p != kNone && state.touched(p)) out.push_back(h);
  }
  std::sort(out.begin(), out.end(), [&](NodeHandle a, NodeHandle b) { return t.key(a) < t.key(b); });
  return out;
}

std::int64_t potential(const MarkState& state) {
  const Tree& t = state.tree();
  std::vector<bool> visited(t.size(), false);
  std::int64_t count = 0;
  for (NodeHandle s : sub_roots(state)) {
    for (NodeHandle v = t.parent(s); v != kNone && !visited[index_of(v)]; v = t.parent(v)) {
      visited[index_of(v)] = true;
      if (state.touched(v)) ++count;
    }
  }
  return 2 * count;
}

namespace {

struct PathShape {
  std::size_t left_depth = 0;
  std::size_t right_depth = 0;
  bool lefts_then_rights = true;
};

std::vector<PathShape> path_shapes(const Tree& t) {
  std::vector<PathShape> shape(t.size());
  std::vector<NodeHandle> stack;
  if (!t.empty()) stack.push_back(t.root());
  while (!stack.empty()) {
    NodeHandle h = stack.back();
    stack.pop_back();
    const PathShape& ps = shape[index_of(h)];
    if (NodeHandle l = t.left(h); l != kNone) {
      shape[index_of(l)] = {ps.left_depth + 1, ps.right_depth,
                            ps.lefts_then_rights && ps.right_depth == 0};
      stack.push_back(l);
    }
    if (NodeHandle r = t.right(h); r != kNone) {
      shape[index_of(r)] = {ps.left_depth, ps.right_depth + 1, ps.lefts_then_rights};
      stack.push_back(r);
    }
  }
  return shape;
}

std::string key_str(const Tree& t, NodeHandle h) { return std::to_string(t.key(h)); }

CheckResult postorder_rule(const MarkState& state, const std::vector<NodeHandle>& subs,
                           NodeHandle next, std::size_t step) {
  const Tree& t = state.tree();
  if (state.touched_count() == 0) {
    if (subs.empty() || subs.front() != next) {
      return CheckResult::fail(step, "first request is not the root of the insertion tree");
    }
    return CheckResult::pass();
  }
  const Key top = state.touched_max();
  auto first_above = std::find_if(subs.begin(), subs.end(),
                                  [&](NodeHandle s) { return t.key(s) > top; });
  const auto above = static_cast<std::size_t>(subs.end() - first_above);
  if (above > 1) {
    return CheckResult::fail(step, std::to_string(above) + " sub-roots exceed the touched maximum");
  }
  if (t.key(next) > top) {
    if (above == 1 && *first_above == next) return CheckResult::pass();
    return CheckResult::fail(step, "new maximum " + key_str(t, next) + " is not the sub-root above " +
                                       std::to_string(top));
  }
  if (first_above == subs.begin() || *(first_above - 1) != next) {
    return CheckResult::fail(step, "key " + key_str(t, next) +
                                       " is not the largest sub-root below " + std::to_string(top));
  }
  return CheckResult::pass();
}

}  // namespace

CheckResult check_touched_connected(const MarkState& state) {
  const Tree& t = state.tree();
  if (state.touched_count() == 0) return CheckResult::pass();
  if (t.empty() || !state.touched(t.root())) return CheckResult::fail(0, "root is untouched");
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    if (state.touched(h) && h != t.root() && !state.touched(t.parent(h))) {
      return CheckResult::fail(0, "touched key " + key_str(t, h) + " has an untouched parent");
    }
  }
  return CheckResult::pass();
}

CheckResult check_untouched_intact(const MarkState& state) {
  const Tree& t = state.tree();
  const Tree& o = state.original();
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    if (state.touched(h)) continue;
    if (t.left(h) != o.left(h) || t.right(h) != o.right(h)) {
      return CheckResult::fail(0, "untouched key " + key_str(t, h) + " changed children");
    }
  }
  return CheckResult::pass();
}

CheckResult check_preorder_invariant(const MarkState& state) {
  const Tree& t = state.tree();
  const std::vector<PathShape> shape = path_shapes(t);
  for (NodeHandle s : sub_roots(state)) {
    if (shape[index_of(s)].left_depth > 1) {
      return CheckResult::fail(0, "sub-root " + key_str(t, s) + " at left-depth " +
                                      std::to_string(shape[index_of(s)].left_depth));
    }
  }
  return CheckResult::pass();
}

CheckResult check_postorder_invariant(const MarkState& state) {
  const Tree& t = state.tree();
  const std::vector<PathShape> shape = path_shapes(t);
  const std::vector<NodeHandle> subs = sub_roots(state);
  for (std::size_t j = 0; j < subs.size(); ++j) {
    const PathShape& ps = shape[index_of(subs[j])];
    if (!ps.lefts_then_rights) {
      return CheckResult::fail(0, "path to sub-root " + key_str(t, subs[j]) +
                                      " takes a left after a right");
    }
    if (state.touched_count() > 0 && t.key(subs[j]) > state.touched_min() &&
        t.is_left_child(subs[j])) {
      return CheckResult::fail(0, "path to sub-root " + key_str(t, subs[j]) +
                                      " does not end in a right pointer");
    }
    if (j > 0 && shape[index_of(subs[j - 1])].left_depth <= ps.left_depth) {
      return CheckResult::fail(0, "sub-root left-depths do not decrease at " +
                                      key_str(t, subs[j - 1]) + ", " + key_str(t, subs[j]));
    }
  }
  return CheckResult::pass();
}

CheckResult check_ancestor_precedence(std::span<const Key> perm) {
  Tree t = bst_of(perm);
  // bst_of numbers nodes by position in perm, so parent-before-child is a
  // handle comparison; transitivity covers every proper ancestor.
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    NodeHandle p = t.parent(h);
    if (p != kNone && index_of(p) > i) {
      return CheckResult::fail(i + 1, "ancestor " + key_str(t, p) + " follows " + key_str(t, h));
    }
  }
  return CheckResult::pass();
}

CheckResult check_subroot_rule(std::span<const Key> perm, TraversalKind kind) {
  require_permutation(perm);
  const bool member = kind == TraversalKind::kPreorder ? is_preorder(perm) : is_postorder(perm);
  if (!member) {
    throw Error(ErrorCode::kWrongClass,
                kind == TraversalKind::kPreorder ? "not a preorder" : "not a postorder");
  }
  MarkState state(bst_of(perm));
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto next = static_cast<NodeHandle>(i);
    const std::vector<NodeHandle> subs = sub_roots(state);
    if (kind == TraversalKind::kPreorder) {
      if (subs.empty() || subs.front() != next) {
        return CheckResult::fail(i + 1, "key " + std::to_string(perm[i]) +
                                            " is not the smallest sub-root");
      }
    } else if (CheckResult r = postorder_rule(state, subs, next, i + 1); !r) {
      return r;
    }
    state.touch(next);
    state.splay(next);
  }
  return CheckResult::pass();
}

CheckResult check_comb(const Tree& tree, CombOrientation orientation) {
  for (std::size_t i = 0; i < tree.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    if (tree.parent(h) == kNone) continue;
    if (orientation == CombOrientation::kLeft) {
      if (tree.is_left_child(h) && tree.right(h) != kNone) {
        return CheckResult::fail(0, "left child " + key_str(tree, h) + " has a right child");
      }
    } else if (!tree.is_left_child(h) && tree.left(h) != kNone) {
      return CheckResult::fail(0, "right child " + key_str(tree, h) + " has a left child");
    }
  }
  return CheckResult::pass();
}

CheckResult check_k_avoiding_shape(std::span<const Key> perm, std::size_t k) {
  const std::size_t longest = decreasing_pattern_length(perm);
  if (longest + 1 > k) {
    throw Error(ErrorCode::kWrongClass, "longest decreasing subsequence " +
                                            std::to_string(longest) + " exceeds k-1 for k = " +
                                            std::to_string(k));
  }
  if (perm.empty()) return CheckResult::pass();

  const Tree t = bst_of(perm);
  const std::vector<PathShape> shape = path_shapes(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (shape[i].left_depth + 2 > k) {
      return CheckResult::fail(0, "key " + key_str(t, static_cast<NodeHandle>(i)) +
                                      " at left-depth " + std::to_string(shape[i].left_depth));
    }
  }

  // Plain insertion in request order. Sub-roots are bucketed by left-depth.
  std::vector<std::set<Key>> by_depth(k);
  auto add = [&](NodeHandle h) {
    if (h != kNone) by_depth[shape[index_of(h)].left_depth].insert(t.key(h));
  };
  add(t.root());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    std::set<Key>& bucket = by_depth[shape[i].left_depth];
    if (bucket.empty() || *bucket.begin() != perm[i]) {
      return CheckResult::fail(i + 1, "key " + std::to_string(perm[i]) +
                                          " is not the smallest sub-root at left-depth " +
                                          std::to_string(shape[i].left_depth));
    }
    bucket.erase(bucket.begin());
    add(t.left(h));
    add(t.right(h));
  }
  return CheckResult::pass();
}

std::size_t RunLedger::total_actual() const {
  std::size_t s = 0;
  for (const LedgerEntry& e : entries) s += e.t;
  return s;
}

std::int64_t RunLedger::total_amortized() const {
  std::int64_t s = 0;
  for (const LedgerEntry& e : entries) s += e.c;
  return s;
}

std::int64_t RunLedger::max_amortized() const {
  std::int64_t m = 0;
  for (const LedgerEntry& e : entries) m = std::max(m, e.c);
  return m;
}

namespace {

struct ParanoidObserver {
  const MarkState& state;
  RunLedger& ledger;
  std::size_t step;
  bool enabled;
  bool failed = false;

  void on_rotate(const Tree&, NodeHandle, NodeHandle) {}
  void on_step(const Tree& t, NodeHandle, const SplayStep&) {
    if (!enabled) return;
    auto record = [&](const char* name, const CheckResult& r) {
      if (r) return;
      failed = true;
      ledger.violations.push_back({step, name, r.detail});
    };
    record("touched-connected", check_touched_connected(state));
    record("untouched-intact", check_untouched_intact(state));
    if (ValidationReport v = t.validate(); !v.ok()) {
      failed = true;
      ledger.violations.push_back({step, "bst-valid", v.message});
    }
    const std::int64_t ref = potential(state);
    if (ref != state.tracked_potential()) {
      failed = true;
      ledger.violations.push_back({step, "potential-agreement",
                                   "tracked " + std::to_string(state.tracked_potential()) +
                                       " vs reference " + std::to_string(ref)});
    }
  }
};

}  // namespace

RunLedger instrumented_run(std::span<const Key> perm, const InstrumentOptions& opts) {
  require_permutation(perm);
  RunLedger ledger;
  ledger.is_preorder = is_preorder(perm);
  ledger.is_postorder = is_postorder(perm);
  ledger.decreasing_length = decreasing_pattern_length(perm);

  MarkState state(bst_of(perm));
  ledger.phi0 = state.tracked_potential();
  ledger.entries.reserve(perm.size());

  std::int64_t prev_phi = ledger.phi0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const std::size_t step = i + 1;
    const auto next = static_cast<NodeHandle>(i);
    bool ok = true;
    auto record = [&](const char* name, const CheckResult& r) {
      if (r) return;
      ok = false;
      ledger.violations.push_back({step, name, r.detail});
    };

    if (opts.structural_checks) {
      const std::vector<NodeHandle> subs = sub_roots(state);
      if (std::find(subs.begin(), subs.end(), next) == subs.end()) {
        record("next-is-sub-root",
               CheckResult::fail(step, "key " + std::to_string(perm[i]) + " is not a sub-root"));
      }
      if (ledger.is_preorder && (subs.empty() || subs.front() != next)) {
        record("preorder-sub-root-rule",
               CheckResult::fail(step, "key " + std::to_string(perm[i]) +
                                           " is not the smallest sub-root"));
      }
      if (ledger.is_postorder) record("postorder-sub-root-rule", postorder_rule(state, subs, next, step));
    }

    state.touch(next);
    ParanoidObserver paranoid{state, ledger, step, opts.paranoid};
    const SplayCost cost = state.splay(next, paranoid, opts.variant);
    ok = ok && !paranoid.failed;

    LedgerEntry e;
    e.i = step;
    e.key = perm[i];
    e.t = cost.cost;
    e.phi = state.tracked_potential();
    e.c = static_cast<std::int64_t>(e.t) + e.phi - prev_phi;
    e.rotations = cost.rotations;
    prev_phi = e.phi;

    if (opts.reference_potential && !opts.paranoid) {
      const std::int64_t ref = potential(state);
      if (ref != e.phi) {
        record("potential-agreement", CheckResult::fail(step, "tracked " + std::to_string(e.phi) +
                                                                  " vs reference " +
                                                                  std::to_string(ref)));
      }
    }
    if (opts.structural_checks) {
      record("touched-connected", check_touched_connected(state));
      record("untouched-intact", check_untouched_intact(state));
      if (ledger.is_preorder) record("preorder-left-depth", check_preorder_invariant(state));
      if (ledger.is_postorder) record("postorder-path-shape", check_postorder_invariant(state));
    }
    if (opts.record_subroots) {
      for (NodeHandle s : sub_roots(state)) e.sub_roots.push_back(state.tree().key(s));
    }
    e.invariant_ok = ok;
    ledger.entries.push_back(std::move(e));
  }
  ledger.final_tree = state.tree();
  return ledger;
}

void write_ledger_csv(std::ostream& out, const RunLedger& ledger) {
  out << "i,key,t_i,phi_i,c_i,rotations,invariant_ok\n";
  for (const LedgerEntry& e : ledger.entries) {
    out << e.i << ',' << e.key << ',' << e.t << ',' << e.phi << ',' << e.c << ',' << e.rotations
        << ',' << (e.invariant_ok ? "true" : "false") << '\n';
  }
}

}  // namespace splaylab
