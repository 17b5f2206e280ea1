#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fgaut/word.hpp"

namespace fgaut {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

// Thin wrapper over mt19937_64. Uses plain modular reduction rather than the
// standard distributions so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }

  /// Uniform in [lo, hi].
  long between(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  bool coin() { return (engine_() >> 17) & 1U; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform freely reduced word of exactly `length` letters.
inline Word random_word(Rng& rng, int rank, std::size_t length) {
  std::vector<letter_t> letters;
  letters.reserve(length);
  while (letters.size() < length) {
    auto idx = static_cast<letter_t>(rng.below(static_cast<std::size_t>(rank)) + 1);
    letter_t c = rng.coin() ? idx : -idx;
    if (!letters.empty() && letters.back() == -c) continue;
    letters.push_back(c);
  }
  return Word::from_letters(rank, letters);
}

/// Reduced word with length uniform in [0, max_length].
inline Word random_word_upto(Rng& rng, int rank, std::size_t max_length) {
  return random_word(rng, rank, rng.below(max_length + 1));
}

}  // namespace fgaut
