#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "splaylab/permutation.hpp"

namespace splaylab {

// std::mt19937_64 has a fully specified output sequence. The standard
// distributions and std::shuffle do not, so bounded draws and shuffles are
// done here to keep every generated sequence identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

Permutation random_permutation(std::size_t n, Rng& rng);

// Merge of k-1 increasing runs: avoids (k,...,2,1). Requires k >= 2.
Permutation random_k_increasing(std::size_t n, std::size_t k, Rng& rng);

}  // namespace splaylab
