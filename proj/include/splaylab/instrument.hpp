#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splaylab/permutation.hpp"
#include "splaylab/splay.hpp"
#include "splaylab/tree.hpp"

namespace splaylab {

// Touched/untouched marking over a run that starts from BST(pi).
//
// Handles are shared between the evolving tree and the untouched original, so
// a node's record in one can be compared directly with the other.
//
// Alongside the flags the state tracks, per node, how many untouched nodes
// sit in its subtree. A touched node is an ancestor of a sub-root exactly
// when that count is positive, which lets the potential be maintained in
// O(1) per rotation.
class MarkState {
 public:
  explicit MarkState(Tree original);

  // Hand-assembled state, e.g. for negative controls. `current` must hold
  // the same handles as `original`.
  static MarkState from_parts(Tree current, Tree original, std::vector<bool> touched);

  const Tree& tree() const { return current_; }
  const Tree& original() const { return original_; }

  bool touched(NodeHandle h) const { return touched_[index_of(h)]; }
  std::size_t touched_count() const { return touched_count_; }
  // Extreme touched keys; meaningless while nothing is touched.
  Key touched_min() const { return touched_min_; }
  Key touched_max() const { return touched_max_; }

  // Marks h touched without moving anything.
  void touch(NodeHandle h);

  template <typename Observer>
  SplayCost splay(NodeHandle h, Observer& obs, SplayVariant variant = SplayVariant::kStandard);
  SplayCost splay(NodeHandle h, SplayVariant variant = SplayVariant::kStandard);

  // Incrementally maintained potential: twice the number of touched nodes
  // that are ancestors of a sub-root.
  std::int64_t tracked_potential() const { return 2 * static_cast<std::int64_t>(phi_nodes_); }

 private:
  struct Tracker;
  friend struct Tracker;

  std::size_t untouched_in(NodeHandle h) const {
    return h == kNone ? 0 : untouched_below_[index_of(h)];
  }
  bool contributes(NodeHandle h) const {
    return touched_[index_of(h)] && untouched_below_[index_of(h)] > 0;
  }
  void relink(NodeHandle h);
  void rebuild_counts();

  Tree current_;
  Tree original_;
  std::vector<bool> touched_;
  std::vector<std::size_t> untouched_below_;
  std::size_t touched_count_ = 0;
  std::size_t phi_nodes_ = 0;
  Key touched_min_ = 0;
  Key touched_max_ = 0;
};

// Untouched nodes whose parent is touched, in increasing key order. Before
// anything is touched the set is {root of BST(pi)}.
std::vector<NodeHandle> sub_roots(const MarkState& state);

// Potential recomputed from the definition by walking up from every sub-root.
std::int64_t potential(const MarkState& state);

// Result of a checker: ok, or the step and reason for the first failure.
struct CheckResult {
  bool ok = true;
  std::size_t step = 0;  // 1-based request index when meaningful, else 0
  std::string detail;

  explicit operator bool() const { return ok; }
  static CheckResult pass() { return {}; }
  static CheckResult fail(std::size_t step, std::string detail) {
    return {false, step, std::move(detail)};
  }
};

// Touched nodes form a connected subtree containing the root.
CheckResult check_touched_connected(const MarkState& state);

// Every untouched node has the same children as in BST(pi).
CheckResult check_untouched_intact(const MarkState& state);

// Each sub-root has left-depth 0 or 1.
CheckResult check_preorder_invariant(const MarkState& state);

// Each sub-root's access path is some lefts followed by some rights, the
// path to every sub-root above the touched minimum ends in a right pointer,
// and sub-root left-depths strictly decrease in increasing key order. (The
// sub-root below the touched minimum, if any, is that minimum's left child
// and is reached by lefts only.)
CheckResult check_postorder_invariant(const MarkState& state);

enum class TraversalKind { kPreorder, kPostorder };
enum class CombOrientation { kLeft, kRight };

CheckResult check_ancestor_precedence(std::span<const Key> perm);

// Replays the touch sequence on BST(perm) and checks which sub-root each
// request picks. Throws WrongClass if perm is not of the given kind.
CheckResult check_subroot_rule(std::span<const Key> perm, TraversalKind kind);

// kLeft: no left child has a right child. kRight: the mirror condition.
CheckResult check_comb(const Tree& tree, CombOrientation orientation);

// For perm avoiding (k,...,2,1): no node of BST(perm) has left-depth above
// k-2, and plain insertion always picks the smallest sub-root of its
// left-depth. Throws WrongClass.
CheckResult check_k_avoiding_shape(std::span<const Key> perm, std::size_t k);

struct InstrumentOptions {
  // O(n) structural checks after every splay.
  bool structural_checks = true;
  // General invariants and potential agreement after every splay step.
  bool paranoid = false;
  // Recompute the potential from scratch after every splay and compare.
  bool reference_potential = false;
  bool record_subroots = false;
  SplayVariant variant = SplayVariant::kStandard;
};

struct LedgerEntry {
  std::size_t i = 0;  // 1-based
  Key key = 0;
  std::size_t t = 0;
  std::int64_t phi = 0;
  std::int64_t c = 0;
  std::size_t rotations = 0;
  bool invariant_ok = true;
  std::vector<Key> sub_roots;  // after the splay; filled when requested
};

struct Violation {
  std::size_t step = 0;
  std::string check;
  std::string detail;
};

struct RunLedger {
  std::int64_t phi0 = 0;
  std::vector<LedgerEntry> entries;
  std::vector<Violation> violations;
  bool is_preorder = false;
  bool is_postorder = false;
  std::size_t decreasing_length = 0;
  Tree final_tree;

  std::size_t total_actual() const;
  std::int64_t total_amortized() const;
  std::int64_t max_amortized() const;
  bool ok() const { return violations.empty(); }
};

// Starts from BST(perm) with every node untouched; each request is touched
// and then splayed. Checkers are chosen from perm's class: the preorder
// checks when perm is a preorder, the postorder checks when it is a
// postorder, and always the general ones. Throws NotAPermutation.
RunLedger instrumented_run(std::span<const Key> perm, const InstrumentOptions& opts = {});

// CSV with header `i,key,t_i,phi_i,c_i,rotations,invariant_ok`.
void write_ledger_csv(std::ostream& out, const RunLedger& ledger);

// ---------------------------------------------------------------------------

struct MarkState::Tracker {
  MarkState& state;
  void on_rotate(const Tree&, NodeHandle x, NodeHandle former_parent) {
    // former_parent now hangs below x
    state.relink(former_parent);
    state.relink(x);
  }
  void on_step(const Tree&, NodeHandle, const SplayStep&) {}
};

template <typename Observer>
SplayCost MarkState::splay(NodeHandle h, Observer& obs, SplayVariant variant) {
  struct Chain {
    Tracker tracker;
    Observer& outer;
    void on_rotate(const Tree& t, NodeHandle x, NodeHandle y) {
      tracker.on_rotate(t, x, y);
      outer.on_rotate(t, x, y);
    }
    void on_step(const Tree& t, NodeHandle x, const SplayStep& s) { outer.on_step(t, x, s); }
  } chain{Tracker{*this}, obs};
  return splaylab::splay(current_, h, chain, variant);
}

}  // namespace splaylab
