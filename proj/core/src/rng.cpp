#include "sensecap/rng.hpp"

namespace sensecap {

// splitmix64 finalizer.
std::uint64_t CounterRng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t k = CounterRng::mix(seed ^ 0x6A09E667F3BCC909ULL);
  k = CounterRng::mix(k ^ (a + 0x243F6A8885A308D3ULL));
  return CounterRng::mix(k ^ (b + 0x13198A2E03707344ULL));
}

}  // namespace sensecap
