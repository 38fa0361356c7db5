#pragma once

#include <cstdint>
#include <random>

#include "boxmis/rational.hpp"

namespace boxmis {

/// Seeded 64-bit stream (mt19937_64) with a draw counter.
/// Uniform reals use the top 53 bits: u = k / 2^53 with k uniform on [0, 2^53).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Independent stream for one trial; depends only on (seed, trial).
  static RandomSource for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  std::uint64_t next_bits53() { return next_u64() >> 11; }
  double uniform01() { return static_cast<double>(next_bits53()) * 0x1p-53; }
  /// Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Bernoulli(p) decided exactly: accept iff k / 2^53 < p, i.e. k < ceil(p * 2^53).
class Coin {
 public:
  explicit Coin(const Rational& p);
  bool flip(RandomSource& rng) const { return rng.next_bits53() < threshold_; }
  const Rational& p() const { return p_; }

 private:
  Rational p_;
  std::uint64_t threshold_;
};

}  // namespace boxmis
