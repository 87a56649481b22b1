#include "splaylab/splay.hpp"

#include <string>

#include "splaylab/permutation.hpp"

namespace splaylab {

SplayStep classify_step(const Tree& tree, NodeHandle x) {
  NodeHandle p = tree.node(x).parent;
  if (p == kNone) throw Error(ErrorCode::kAtRoot, "no splay step at the root");

  Side lower = tree.is_left_child(x) ? Side::kLeft : Side::kRight;
  NodeHandle g = tree.parent(p);
  if (g == kNone) return {StepKind::kZig, lower, lower};

  Side upper = tree.is_left_child(p) ? Side::kLeft : Side::kRight;
  return {upper == lower ? StepKind::kZigZig : StepKind::kZigZag, upper, lower};
}

SequenceCost splay_sequence(Tree& tree, std::span<const Key> requests) {
  SequenceCost seq;
  seq.per_op.reserve(requests.size());
  for (Key k : requests) {
    NodeHandle h = tree.search(k);
    if (h == kNone) {
      throw Error(ErrorCode::kKeyNotFound, "key " + std::to_string(k) + " not in tree");
    }
    SplayCost c = splay(tree, h);
    seq.total += c.cost;
    seq.per_op.push_back(c);
  }
  seq.m = requests.size();
  return seq;
}

SplayCost insertion_splay(Tree& tree, Key k) {
  NodeHandle h = tree.insert(k);
  return splay(tree, h);
}

SequenceCost insertion_splay_sequence(std::span<const Key> perm, Tree& out) {
  require_permutation(perm);
  out = Tree{};
  SequenceCost seq;
  seq.per_op.reserve(perm.size());
  for (Key k : perm) {
    SplayCost c = insertion_splay(out, k);
    seq.total += c.cost;
    seq.per_op.push_back(c);
  }
  seq.m = perm.size();
  return seq;
}

SequenceCost insertion_splay_sequence(std::span<const Key> perm) {
  Tree scratch;
  return insertion_splay_sequence(perm, scratch);
}

}  // namespace splaylab
