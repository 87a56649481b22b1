#include "splaylab/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

namespace splaylab {

bool is_permutation_of_range(std::span<const Key> seq) {
  const auto n = static_cast<Key>(seq.size());
  std::vector<bool> seen(seq.size() + 1, false);
  for (Key k : seq) {
    if (k < 1 || k > n || seen[static_cast<std::size_t>(k)]) return false;
    seen[static_cast<std::size_t>(k)] = true;
  }
  return true;
}

void require_permutation(std::span<const Key> seq) {
  if (!is_permutation_of_range(seq)) {
    throw Error(ErrorCode::kNotAPermutation,
                "sequence of length " + std::to_string(seq.size()) + " is not a permutation of 1.." +
                    std::to_string(seq.size()));
  }
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Key>(i + 1);
  return p;
}

Permutation parse_permutation(std::string_view text) {
  Permutation out;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (pos < text.size()) {
    if (is_space(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    Key v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
    if (ec != std::errc() || ptr != text.data() + end) {
      throw Error(ErrorCode::kSyntaxError,
                  "'" + std::string(text.substr(pos, end - pos)) + "' is not a decimal integer");
    }
    out.push_back(v);
    pos = end;
  }
  require_permutation(out);
  return out;
}

Permutation read_permutation(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_permutation(text);
}

std::string format_permutation(std::span<const Key> perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(perm[i]);
  }
  return out;
}

Permutation preorder(const Tree& tree) {
  Permutation out;
  out.reserve(tree.size());
  std::vector<NodeHandle> stack;
  if (!tree.empty()) stack.push_back(tree.root());
  while (!stack.empty()) {
    NodeHandle h = stack.back();
    stack.pop_back();
    out.push_back(tree.key(h));
    if (tree.right(h) != kNone) stack.push_back(tree.right(h));
    if (tree.left(h) != kNone) stack.push_back(tree.left(h));
  }
  return out;
}

Permutation postorder(const Tree& tree) {
  // Root-right-left order, reversed.
  Permutation out;
  out.reserve(tree.size());
  std::vector<NodeHandle> stack;
  if (!tree.empty()) stack.push_back(tree.root());
  while (!stack.empty()) {
    NodeHandle h = stack.back();
    stack.pop_back();
    out.push_back(tree.key(h));
    if (tree.left(h) != kNone) stack.push_back(tree.left(h));
    if (tree.right(h) != kNone) stack.push_back(tree.right(h));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Tree bst_of(std::span<const Key> perm) {
  require_permutation(perm);
  const std::size_t n = perm.size();

  // The insertion tree is the Cartesian tree over keys 1..n with insertion
  // position as a min-heap priority.
  std::vector<std::size_t> pos(n + 1);
  for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(perm[i])] = i;

  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i].key = perm[i];

  std::vector<std::size_t> spine;  // right spine of the tree built so far
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t h = pos[k];
    NodeHandle last = kNone;
    while (!spine.empty() && spine.back() > h) {
      last = static_cast<NodeHandle>(spine.back());
      spine.pop_back();
    }
    nodes[h].left = last;
    if (last != kNone) nodes[index_of(last)].parent = static_cast<NodeHandle>(h);
    if (!spine.empty()) {
      nodes[spine.back()].right = static_cast<NodeHandle>(h);
      nodes[h].parent = static_cast<NodeHandle>(spine.back());
    } else {
      nodes[h].parent = kNone;
    }
    spine.push_back(h);
  }
  NodeHandle root = spine.empty() ? kNone : static_cast<NodeHandle>(spine.front());
  return Tree::from_nodes(std::move(nodes), root);
}

namespace {

std::vector<std::size_t> dense_ranks(std::span<const Key> seq) {
  std::vector<Key> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> ranks(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ranks[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), seq[i]) - sorted.begin());
  }
  return ranks;
}

}  // namespace

bool order_isomorphic(std::span<const Key> a, std::span<const Key> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "sequences of length " + std::to_string(a.size()) +
                                                " and " + std::to_string(b.size()));
  }
  return dense_ranks(a) == dense_ranks(b);
}

bool contains_pattern(std::span<const Key> seq, std::span<const Key> pattern) {
  const std::size_t m = pattern.size();
  if (m > kMaxPatternLength) {
    throw Error(ErrorCode::kBadConfig, "pattern length " + std::to_string(m) + " exceeds " +
                                           std::to_string(kMaxPatternLength));
  }
  if (m == 0) return true;
  if (m > seq.size()) return false;

  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::vector<Key> sub(m);
  const std::size_t n = seq.size();
  while (true) {
    for (std::size_t i = 0; i < m; ++i) sub[i] = seq[idx[i]];
    if (order_isomorphic(sub, pattern)) return true;

    // Next m-combination of 0..n-1 in lexicographic order.
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool is_preorder(std::span<const Key> perm) {
  Tree t = bst_of(perm);
  return std::ranges::equal(preorder(t), perm);
}

bool is_postorder(std::span<const Key> perm) {
  // If perm is the postorder of T, its reversal lists every node before its
  // descendants, so inserting the reversal rebuilds T.
  Permutation reversed(perm.rbegin(), perm.rend());
  Tree t = bst_of(reversed);
  return std::ranges::equal(postorder(t), perm);
}

std::size_t decreasing_pattern_length(std::span<const Key> perm) {
  require_permutation(perm);
  // Patience piles over the negated values: tails[j] is the largest possible
  // last element of a decreasing run of length j+1.
  std::vector<Key> tails;
  for (Key k : perm) {
    auto it = std::lower_bound(tails.begin(), tails.end(), k, std::greater<>());
    if (it == tails.end()) {
      tails.push_back(k);
    } else {
      *it = k;
    }
  }
  return tails.size();
}

Permutation mirror(std::span<const Key> perm) {
  require_permutation(perm);
  const auto n = static_cast<Key>(perm.size());
  Permutation out(perm.size());
  std::transform(perm.begin(), perm.end(), out.begin(), [n](Key k) { return n + 1 - k; });
  return out;
}

}  // namespace splaylab
