#include "splaylab/rng.hpp"

#include <string>

namespace splaylab {

Permutation random_permutation(std::size_t n, Rng& rng) {
  Permutation p = identity_permutation(n);
  rng.shuffle(std::span<Key>(p));
  return p;
}

Permutation random_k_increasing(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 2) {
    if (n == 0) return {};
    throw Error(ErrorCode::kBadConfig, "k-increasing needs k >= 2, got " + std::to_string(k));
  }
  const std::size_t runs = k - 1;

  // Assign each key to a run, then interleave runs by a shuffled label
  // sequence. Keys within a run are emitted in increasing order.
  std::vector<std::vector<Key>> members(runs);
  std::vector<std::size_t> labels(n);
  for (std::size_t key = 1; key <= n; ++key) {
    std::size_t r = static_cast<std::size_t>(rng.below(runs));
    members[r].push_back(static_cast<Key>(key));
    labels[key - 1] = r;
  }
  rng.shuffle(std::span<std::size_t>(labels));

  std::vector<std::size_t> cursor(runs, 0);
  Permutation out;
  out.reserve(n);
  for (std::size_t r : labels) out.push_back(members[r][cursor[r]++]);
  return out;
}

}  // namespace splaylab
