#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "splaylab/tree.hpp"

namespace splaylab {

enum class StepKind { kZig, kZigZag, kZigZig };
enum class Side { kLeft, kRight };

// `lower` is the side x hangs on below its parent, `upper` the side the parent
// hangs on below the grandparent. A zig has no grandparent; upper == lower.
struct SplayStep {
  StepKind kind = StepKind::kZig;
  Side upper = Side::kLeft;
  Side lower = Side::kLeft;

  friend bool operator==(const SplayStep&, const SplayStep&) = default;
};

struct SplayCost {
  std::size_t depth_before = 0;
  std::size_t cost = 0;
  std::size_t rotations = 0;
};

struct SequenceCost {
  std::size_t m = 0;
  std::size_t total = 0;
  std::vector<SplayCost> per_op;
};

// kMoveToRoot executes every zig-zig as two rotations at x. It exists only as
// a deliberately wrong rule for the harness's negative controls.
enum class SplayVariant { kStandard, kMoveToRoot };

struct NullObserver {
  void on_rotate(const Tree&, NodeHandle /*x*/, NodeHandle /*former_parent*/) {}
  void on_step(const Tree&, NodeHandle /*x*/, const SplayStep&) {}
};

// Throws AtRoot.
SplayStep classify_step(const Tree& tree, NodeHandle x);

namespace detail {

template <typename Observer>
void rotate_observed(Tree& tree, NodeHandle x, Observer& obs) {
  NodeHandle y = tree.parent(x);
  tree.rotate(x);
  obs.on_rotate(tree, x, y);
}

}  // namespace detail

template <typename Observer>
SplayStep splay_step(Tree& tree, NodeHandle x, Observer& obs,
                     SplayVariant variant = SplayVariant::kStandard) {
  SplayStep step = classify_step(tree, x);
  switch (step.kind) {
    case StepKind::kZig:
      detail::rotate_observed(tree, x, obs);
      break;
    case StepKind::kZigZig:
      if (variant == SplayVariant::kStandard) {
        detail::rotate_observed(tree, tree.parent(x), obs);
      } else {
        detail::rotate_observed(tree, x, obs);
      }
      detail::rotate_observed(tree, x, obs);
      break;
    case StepKind::kZigZag:
      detail::rotate_observed(tree, x, obs);
      detail::rotate_observed(tree, x, obs);
      break;
  }
  obs.on_step(tree, x, step);
  return step;
}

inline SplayStep splay_step(Tree& tree, NodeHandle x) {
  NullObserver obs;
  return splay_step(tree, x, obs);
}

// Brings x to the root. Throws InvalidHandle.
template <typename Observer>
SplayCost splay(Tree& tree, NodeHandle x, Observer& obs,
                SplayVariant variant = SplayVariant::kStandard) {
  SplayCost c;
  c.depth_before = tree.depths(x).depth;
  c.cost = c.depth_before + 1;
  while (tree.parent(x) != kNone) {
    SplayStep s = splay_step(tree, x, obs, variant);
    c.rotations += s.kind == StepKind::kZig ? 1 : 2;
  }
  return c;
}

inline SplayCost splay(Tree& tree, NodeHandle x) {
  NullObserver obs;
  return splay(tree, x, obs);
}

// Splays each key of `requests` in order. Throws KeyNotFound naming the key.
SequenceCost splay_sequence(Tree& tree, std::span<const Key> requests);

// Leaf-inserts k and splays the new node. Throws DuplicateKey.
SplayCost insertion_splay(Tree& tree, Key k);

// Insertion-splays a permutation of 1..n into an empty tree; the final tree is
// left in `out`. Throws NotAPermutation.
SequenceCost insertion_splay_sequence(std::span<const Key> perm, Tree& out);
SequenceCost insertion_splay_sequence(std::span<const Key> perm);

}  // namespace splaylab
