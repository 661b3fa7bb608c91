#pragma once

#include <cstdint>
#include <string_view>

namespace ruleboost {

// Per-purpose seed derived from the run seed: splitmix64(seed ^ fnv1a(purpose)).
// Purposes in use: "kmeans:<column>" and "swarm:<indicator label>".
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view purpose);

}  // namespace ruleboost
