#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splaylab/tree.hpp"

namespace splaylab {

// A sequence of distinct keys. Where an operation says "permutation" it means
// a permutation of 1..n, checked with require_permutation.
using Permutation = std::vector<Key>;

bool is_permutation_of_range(std::span<const Key> seq);

// Throws NotAPermutation.
void require_permutation(std::span<const Key> seq);

Permutation identity_permutation(std::size_t n);

// Whitespace-separated decimal integers. Throws SyntaxError on non-integers
// and NotAPermutation when the values are not 1..n.
Permutation parse_permutation(std::string_view text);
Permutation read_permutation(std::istream& in);
std::string format_permutation(std::span<const Key> perm);

Permutation preorder(const Tree& tree);
Permutation postorder(const Tree& tree);

// Insertion tree of a permutation. Node i of the result holds perm[i], so
// handles follow insertion order exactly as repeated Tree::insert would.
// Runs in linear time. Throws NotAPermutation.
Tree bst_of(std::span<const Key> perm);

// Throws LengthMismatch.
bool order_isomorphic(std::span<const Key> a, std::span<const Key> b);

// Brute-force subsequence enumeration. Patterns longer than
// kMaxPatternLength are rejected with BadConfig.
inline constexpr std::size_t kMaxPatternLength = 4;
bool contains_pattern(std::span<const Key> seq, std::span<const Key> pattern);

bool is_preorder(std::span<const Key> perm);
bool is_postorder(std::span<const Key> perm);

// Longest strictly decreasing subsequence. A permutation avoids (k,...,2,1)
// iff this is at most k-1.
std::size_t decreasing_pattern_length(std::span<const Key> perm);

// Complement k -> n+1-k.
Permutation mirror(std::span<const Key> perm);

}  // namespace splaylab
