#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splaylab/error.hpp"

namespace splaylab {

using Key = std::int64_t;

// Index into a Tree's node store. Handles stay valid for the lifetime of the
// tree: rotations relink nodes but never move them.
enum class NodeHandle : std::uint32_t {};

inline constexpr NodeHandle kNone{std::numeric_limits<std::uint32_t>::max()};

inline constexpr std::size_t index_of(NodeHandle h) {
  return static_cast<std::size_t>(h);
}

struct Node {
  Key key = 0;
  NodeHandle left = kNone;
  NodeHandle right = kNone;
  NodeHandle parent = kNone;
};

struct Depths {
  std::size_t depth = 0;
  std::size_t left_depth = 0;
  std::size_t right_depth = 0;

  friend bool operator==(const Depths&, const Depths&) = default;
};

struct ValidationReport {
  enum class Kind {
    kOk,
    kSymmetricOrder,
    kParentLink,
    kRootParent,
    kDanglingHandle,
    kCycle,
    kSize,
  };

  Kind kind = Kind::kOk;
  NodeHandle at = kNone;
  std::string message;

  bool ok() const { return kind == Kind::kOk; }
};

// Plain binary search tree over distinct integer keys with parent links.
//
// The node store is append-only; `size()` counts stored nodes, which equals
// the number of reachable nodes for every tree built through insert/rotate.
// `from_nodes` bypasses that guarantee so that validate() has something to
// catch.
class Tree {
 public:
  Tree() = default;

  // Assembles a tree from raw records without checking anything.
  static Tree from_nodes(std::vector<Node> nodes, NodeHandle root);

  bool empty() const { return root_ == kNone; }
  std::size_t size() const { return nodes_.size(); }
  NodeHandle root() const { return root_; }

  bool is_live(NodeHandle h) const { return index_of(h) < nodes_.size(); }

  // Checked access; throws InvalidHandle.
  const Node& node(NodeHandle h) const;

  Key key(NodeHandle h) const { return nodes_[index_of(h)].key; }
  NodeHandle left(NodeHandle h) const { return nodes_[index_of(h)].left; }
  NodeHandle right(NodeHandle h) const { return nodes_[index_of(h)].right; }
  NodeHandle parent(NodeHandle h) const { return nodes_[index_of(h)].parent; }
  bool is_left_child(NodeHandle h) const {
    NodeHandle p = parent(h);
    return p != kNone && left(p) == h;
  }

  std::span<const Node> nodes() const { return nodes_; }

  // Leaf insertion. Throws DuplicateKey.
  NodeHandle insert(Key k);

  // Handle of the node holding k, or kNone.
  NodeHandle search(Key k) const;

  // Single rotation lifting x above its parent. Throws RotateAtRoot.
  void rotate(NodeHandle x);

  Depths depths(NodeHandle x) const;
  NodeHandle lca(NodeHandle a, NodeHandle b) const;

  ValidationReport validate() const;

  std::vector<Key> inorder_keys() const;

  // Same keys in the same shape; handle numbering is ignored.
  friend bool operator==(const Tree& a, const Tree& b);

 private:
  void replace_child(NodeHandle parent, NodeHandle old_child, NodeHandle new_child);

  std::vector<Node> nodes_;
  NodeHandle root_ = kNone;
};

// Bracket literal: `∅` for the empty tree, `[k]`, `[k L]`, `[k L R]`,
// `[k ∅ R]`. `nil` is accepted as an ASCII spelling of `∅`.
std::string format_tree(const Tree& tree);

// Throws SyntaxError or SymmetricOrderViolation.
Tree parse_tree(std::string_view text);

}  // namespace splaylab
