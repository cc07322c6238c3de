#pragma once

#include <cstdint>

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so sampling is reproducible under any parallel
// partition of the index range and there is no generator state to carry.
//
// Stream discipline: one stream per technology per period, technology-major.
// stream_id(t, p) packs technology slot t into the high bits and period p into
// the low bits, so schedules of up to 2^16 periods never collide.
namespace techfolio::rng {

// splitmix64 finalizer: a full-avalanche bijection on 64 bits.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint32_t stream_id(std::uint32_t technology, std::uint32_t period) {
  return (technology << 16) | (period & 0xFFFFu);
}

constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index) {
  std::uint64_t h = mix(seed ^ 0xD1B54A32D192ED03ULL);
  h = mix(h ^ mix(stream));
  return mix(h ^ mix(index));
}

// Uniform draw in (0, 1]; never 0, so log() below is safe.
constexpr double uniform01(std::uint64_t key) {
  return static_cast<double>((key >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch). Two counter slots per draw.
double standard_normal(std::uint64_t seed, std::uint32_t stream, std::uint64_t index);

}  // namespace techfolio::rng
