#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splaylab/tree.hpp"

namespace splaylab {

// Exact rational weight-balance parameter in (0, 1/2]. Denominators are
// capped at 2^30 (decimals take at most nine fractional digits).
class Alpha {
 public:
  // Throws BadConfig outside (0, 1/2].
  Alpha(std::uint64_t num, std::uint64_t den);

  // Accepts "1/4" or a decimal such as "0.25".
  static Alpha parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

inline const Alpha kDefaultAlpha{1, 4};

struct DfSum {
  double value = 0.0;
  std::vector<double> terms;
};

// Subtree size per handle.
std::vector<std::size_t> subtree_sizes(const Tree& tree);

// Edges on the longest root-to-leaf path; -1 for the empty tree.
long height(const Tree& tree);

// Number of keys <= k, counted over the tree. Throws KeyNotFound.
std::size_t rank(const Tree& tree, Key k);

// Sum over consecutive requests of log2(|rank gap| + 1). Throws KeyNotFound.
DfSum df_sum(const Tree& tree, std::span<const Key> requests, bool keep_terms = false);

bool is_weight_balanced(const Tree& tree, const Alpha& alpha);

// Perfectly balanced tree over 1..n. Throws SizeNotPerfect unless n = 2^k - 1.
Tree gen_perfect_tree(std::size_t n);

// Insertion tree of a seeded uniform permutation of 1..n.
Tree gen_random_tree(std::size_t n, std::uint64_t seed);

// Random member of BB[alpha] over 1..n: each subtree's root is drawn
// uniformly among the splits that keep the balance condition. Every size
// admits such a split when alpha <= 1/3; above that only perfect sizes are
// supported and the perfect tree is returned. Throws SizeNotPerfect.
Tree gen_weight_balanced_tree(std::size_t n, const Alpha& alpha, std::uint64_t seed);

bool is_perfect_size(std::size_t n);

}  // namespace splaylab
