#pragma once
// Deterministic randomness. All sampling goes through mt19937_64 plus our own
// rejection sampling; the standard distribution templates are avoided because
// their output is not pinned across library implementations. Given the same
// seed, every platform produces the same stream.

#include "polylat/numth.hpp"

#include <random>
#include <string>
#include <vector>

namespace polylat {

class Rng {
  public:
    explicit Rng(u64 seed) : gen_(seed) {}

    u64 next() { return gen_(); }

    // Uniform in [0, bound) by rejection; bound >= 1.
    u64 below(u64 bound);

    // Uniform in [lo, hi] inclusive.
    u64 between(u64 lo, u64 hi);

    bool bit() { return gen_() & 1; }

    // k distinct values from [0, bound), in the order they were drawn.
    std::vector<u64> distinct(u64 bound, std::size_t k);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 gen_;
};

// Stable seed derivation for experiment trials: hashes
// (master, label, index) into a fresh 64-bit seed. Implemented in hash.cpp.
u64 derive_seed(u64 master, const std::string& label, u64 index);

} // namespace polylat
