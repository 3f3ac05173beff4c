#include "simpairs/rng.hpp"

namespace simpairs {

std::uint64_t Rng::below(std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 product = u128{engine_()} * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = u128{engine_()} * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace simpairs
