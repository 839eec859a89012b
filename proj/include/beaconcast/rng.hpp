// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace beaconcast {

// Stream identifiers for per-purpose generators derived from a run seed.
enum class Stream : std::uint64_t {
  kTraffic = 1,
  kChannel = 2,
};

// splitmix64 finalizer over (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept;

inline std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
  return std::mt19937_64(derive_seed(seed, stream));
}

// Uniform in [0, 1) from the top 53 bits. Unlike
// std::uniform_real_distribution this is identical on every standard library.
inline double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace beaconcast
