#include "ruleboost/seed.hpp"

namespace ruleboost {

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view purpose) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ruleboost
