#pragma once

// Deliberately naive reference implementations. They share nothing with the
// library beyond the key type and the tree literal format.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "splaylab/tree.hpp"

namespace oracle {

using splaylab::Key;

struct Node {
  Key key;
  std::unique_ptr<Node> left, right;
  Node* parent = nullptr;
};

// Pointer-based BST with leaf insertion and textbook splaying.
class NaiveTree {
 public:
  void insert(Key k) {
    if (!root_) {
      root_ = std::make_unique<Node>(Node{k, nullptr, nullptr, nullptr});
      return;
    }
    Node* cur = root_.get();
    while (true) {
      auto& slot = k < cur->key ? cur->left : cur->right;
      if (!slot) {
        slot = std::make_unique<Node>(Node{k, nullptr, nullptr, cur});
        return;
      }
      cur = slot.get();
    }
  }

  Node* find(Key k) const {
    Node* cur = root_.get();
    while (cur && cur->key != k) cur = k < cur->key ? cur->left.get() : cur->right.get();
    return cur;
  }

  // Returns depth + 1.
  std::size_t splay(Key k) {
    Node* x = find(k);
    std::size_t depth = 0;
    for (Node* p = x->parent; p; p = p->parent) ++depth;
    while (x->parent) {
      Node* p = x->parent;
      Node* g = p->parent;
      if (!g) {
        rotate(x);
      } else if ((g->left.get() == p) == (p->left.get() == x)) {
        rotate(p);
        rotate(x);
      } else {
        rotate(x);
        rotate(x);
      }
    }
    return depth + 1;
  }

  std::string format() const { return format(root_.get()); }

 private:
  std::unique_ptr<Node>& owner(Node* n) {
    if (!n->parent) return root_;
    return n->parent->left.get() == n ? n->parent->left : n->parent->right;
  }

  void rotate(Node* x) {
    Node* p = x->parent;
    std::unique_ptr<Node>& p_slot = owner(p);
    std::unique_ptr<Node> p_own = std::move(p_slot);
    const bool left = p->left.get() == x;
    std::unique_ptr<Node> x_own = std::move(left ? p->left : p->right);
    std::unique_ptr<Node>& inner = left ? x->right : x->left;
    if (inner) inner->parent = p;
    (left ? p->left : p->right) = std::move(inner);
    x->parent = p->parent;
    p->parent = x;
    inner = std::move(p_own);
    p_slot = std::move(x_own);
  }

  static std::string format(const Node* n) {
    if (!n) return "∅";
    std::string s = "[" + std::to_string(n->key);
    if (n->left || n->right) s += " " + format(n->left.get());
    if (n->right) s += " " + format(n->right.get());
    return s + "]";
  }

  std::unique_ptr<Node> root_;
};

inline std::string bst_literal(const std::vector<Key>& perm) {
  NaiveTree t;
  for (Key k : perm) t.insert(k);
  return t.format();
}

// Insert-then-splay with the naive tree.
inline std::size_t insertion_splay_cost(const std::vector<Key>& perm, std::string* final_tree = nullptr) {
  NaiveTree t;
  std::size_t total = 0;
  for (Key k : perm) {
    t.insert(k);
    total += t.splay(k);
  }
  if (final_tree) *final_tree = t.format();
  return total;
}

// Splaying requests over BST(start).
inline std::size_t splay_cost(const std::vector<Key>& start, const std::vector<Key>& requests) {
  NaiveTree t;
  for (Key k : start) t.insert(k);
  std::size_t total = 0;
  for (Key k : requests) total += t.splay(k);
  return total;
}

// True if some i<j<l has values ordered like the length-3 pattern.
inline bool contains3(const std::vector<Key>& p, const std::vector<Key>& pat) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        const Key v[3] = {p[i], p[j], p[l]};
        bool match = true;
        for (int a = 0; a < 3 && match; ++a)
          for (int b = 0; b < 3 && match; ++b)
            match = (v[a] < v[b]) == (pat[a] < pat[b]);
        if (match) return true;
      }
  return false;
}

// Longest decreasing subsequence over all 2^n subsets.
inline std::size_t longest_decreasing(const std::vector<Key>& p) {
  std::size_t best = 0;
  const std::size_t n = p.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Key last = 0;
    bool first = true, ok = true;
    std::size_t len = 0;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (!first && p[i] >= last) ok = false;
      last = p[i];
      first = false;
      ++len;
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

inline std::vector<std::vector<Key>> all_permutations(std::size_t n) {
  std::vector<Key> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Key>(i + 1);
  std::vector<std::vector<Key>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace oracle
