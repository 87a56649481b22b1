#include "splaylab/balance.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>

#include "splaylab/permutation.hpp"
#include "splaylab/rng.hpp"

namespace splaylab {

namespace {
// Keeps (size + 1) * den within 64 bits for any tree that fits a NodeHandle.
constexpr std::uint64_t kMaxDen = std::uint64_t{1} << 30;
}  // namespace

Alpha::Alpha(std::uint64_t num, std::uint64_t den) {
  // 0 < num/den <= 1/2
  if (den == 0 || num == 0 || den > kMaxDen || 2 * num > den) {
    throw Error(ErrorCode::kBadConfig, "alpha " + std::to_string(num) + "/" + std::to_string(den) +
                                           " outside (0, 1/2]");
  }
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Alpha Alpha::parse(std::string_view text) {
  auto parse_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::kBadConfig, "cannot parse alpha '" + std::string(text) + "'");
    }
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Alpha(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Alpha(parse_u64(text), 1);
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 9) {
    throw Error(ErrorCode::kBadConfig, "alpha '" + std::string(text) + "' has too many digits");
  }
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::uint64_t num = (whole.empty() ? 0 : parse_u64(whole)) * den +
                      (frac.empty() ? 0 : parse_u64(frac));
  return Alpha(num, den);
}

std::string Alpha::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::vector<std::size_t> subtree_sizes(const Tree& tree) {
  std::vector<std::size_t> size(tree.size(), 0);
  // Children precede parents in reversed preorder.
  std::vector<NodeHandle> order;
  order.reserve(tree.size());
  std::vector<NodeHandle> stack;
  if (!tree.empty()) stack.push_back(tree.root());
  while (!stack.empty()) {
    NodeHandle h = stack.back();
    stack.pop_back();
    order.push_back(h);
    if (tree.left(h) != kNone) stack.push_back(tree.left(h));
    if (tree.right(h) != kNone) stack.push_back(tree.right(h));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t s = 1;
    if (tree.left(*it) != kNone) s += size[index_of(tree.left(*it))];
    if (tree.right(*it) != kNone) s += size[index_of(tree.right(*it))];
    size[index_of(*it)] = s;
  }
  return size;
}

long height(const Tree& tree) {
  if (tree.empty()) return -1;
  long best = 0;
  std::vector<std::pair<NodeHandle, long>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [h, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (tree.left(h) != kNone) stack.emplace_back(tree.left(h), d + 1);
    if (tree.right(h) != kNone) stack.emplace_back(tree.right(h), d + 1);
  }
  return best;
}

std::size_t rank(const Tree& tree, Key k) {
  if (tree.search(k) == kNone) {
    throw Error(ErrorCode::kKeyNotFound, "key " + std::to_string(k) + " not in tree");
  }
  std::size_t count = 0;
  for (const Node& n : tree.nodes()) {
    if (n.key <= k) ++count;
  }
  return count;
}

DfSum df_sum(const Tree& tree, std::span<const Key> requests, bool keep_terms) {
  const std::vector<Key> sorted = tree.inorder_keys();
  auto rank_of = [&](Key k) -> std::int64_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
    if (it == sorted.end() || *it != k) {
      throw Error(ErrorCode::kKeyNotFound, "key " + std::to_string(k) + " not in tree");
    }
    return static_cast<std::int64_t>(it - sorted.begin()) + 1;
  };

  DfSum out;
  if (keep_terms && requests.size() > 1) out.terms.reserve(requests.size() - 1);
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    std::int64_t r = rank_of(requests[i]);
    if (i > 0) {
      double term = std::log2(static_cast<double>(std::llabs(r - prev)) + 1.0);
      out.value += term;
      if (keep_terms) out.terms.push_back(term);
    }
    prev = r;
  }
  return out;
}

bool is_weight_balanced(const Tree& tree, const Alpha& alpha) {
  const std::vector<std::size_t> size = subtree_sizes(tree);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    auto h = static_cast<NodeHandle>(i);
    std::size_t l = tree.left(h) == kNone ? 0 : size[index_of(tree.left(h))];
    std::size_t r = tree.right(h) == kNone ? 0 : size[index_of(tree.right(h))];
    // (min + 1) * den >= num * (|x| + 1)
    const std::uint64_t lhs = (std::min(l, r) + 1) * alpha.den();
    const std::uint64_t rhs = (size[i] + 1) * alpha.num();
    if (lhs < rhs) return false;
  }
  return true;
}

bool is_perfect_size(std::size_t n) { return std::has_single_bit(n + 1); }

namespace {

// Emits the preorder of a tree over [1, n] whose root split is chosen by
// `pick_left_size(size)`, then rebuilds it as an insertion tree.
template <typename Pick>
Tree build_by_splits(std::size_t n, Pick pick_left_size) {
  Permutation order;
  order.reserve(n);
  struct Range {
    std::size_t lo;
    std::size_t size;
  };
  std::vector<Range> stack;
  if (n > 0) stack.push_back({1, n});
  while (!stack.empty()) {
    Range r = stack.back();
    stack.pop_back();
    std::size_t left = pick_left_size(r.size);
    order.push_back(static_cast<Key>(r.lo + left));
    std::size_t right = r.size - 1 - left;
    if (right > 0) stack.push_back({r.lo + left + 1, right});
    if (left > 0) stack.push_back({r.lo, left});
  }
  return bst_of(order);
}

}  // namespace

Tree gen_perfect_tree(std::size_t n) {
  if (!is_perfect_size(n)) {
    throw Error(ErrorCode::kSizeNotPerfect, std::to_string(n) + " is not 2^k - 1");
  }
  return build_by_splits(n, [](std::size_t size) { return size / 2; });
}

Tree gen_random_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return bst_of(random_permutation(n, rng));
}

Tree gen_weight_balanced_tree(std::size_t n, const Alpha& alpha, std::uint64_t seed) {
  // alpha > 1/3
  if (3 * alpha.num() > alpha.den()) return gen_perfect_tree(n);

  Rng rng(seed);
  return build_by_splits(n, [&](std::size_t size) {
    // Valid left sizes l satisfy (min(l, size-1-l) + 1) * den >= num * (size + 1);
    // they form a symmetric interval around the middle.
    const std::uint64_t need = (size + 1) * alpha.num();
    const std::uint64_t min_plus_one = (need + alpha.den() - 1) / alpha.den();
    std::size_t lo = min_plus_one == 0 ? 0 : min_plus_one - 1;
    std::size_t hi = size - 1 - lo;
    return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  });
}

}  // namespace splaylab
