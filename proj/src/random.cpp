#include "boxmis/random.hpp"

#include <stdexcept>

namespace boxmis {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomSource RandomSource::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return RandomSource(splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RandomSource::next_u64() {
  ++position_;
  return engine_();
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Reject the short final bucket so every residue is equally likely.
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r < limit) return r % bound;
  }
}

Coin::Coin(const Rational& p) : p_(p) {
  if (p < 0 || p > 1) throw std::domain_error("probability " + to_string(p) + " outside [0, 1]");
  BigInt t = ceil(p * Rational(BigInt(1) << 53));
  threshold_ = t.convert_to<std::uint64_t>();
}

}  // namespace boxmis
