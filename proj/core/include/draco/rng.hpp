#pragma once

#include <cstdint>
#include <random>

namespace draco {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent substream seeds from one
// master seed without correlated low bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// All randomness in an experiment flows from one seed; each (purpose, index)
// pair gets its own engine so that adding a consumer (e.g. an attack) never
// perturbs the draws of another (e.g. batch shuffling).
inline Rng substream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index = 0) {
    return Rng(mix64(mix64(seed ^ mix64(purpose)) + index));
}

namespace stream {
inline constexpr std::uint64_t kBatch = 0xb47c;
inline constexpr std::uint64_t kAttackSelect = 0xa77a;
inline constexpr std::uint64_t kAttackPayload = 0xa77b;
inline constexpr std::uint64_t kDetect = 0xdef0;
inline constexpr std::uint64_t kData = 0xda7a;
inline constexpr std::uint64_t kInit = 0x1417;
}  // namespace stream

}  // namespace draco
