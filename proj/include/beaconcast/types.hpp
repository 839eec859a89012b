// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace beaconcast {

using Bytes = std::vector<std::uint8_t>;

// Planar coordinates in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Simulation clock in integer microseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerSecond = 1'000'000;
inline constexpr SimTime kMicrosPerMilli = 1'000;

SimTime seconds_to_sim(double seconds) noexcept;
double sim_to_seconds(SimTime t) noexcept;

// 6-byte transmitter identifier (BSSID).
struct Bssid {
  std::array<std::uint8_t, 6> octets{};

  static Bssid parse(const std::string& text);  // "aa:bb:cc:dd:ee:ff"
  std::string to_string() const;

  friend bool operator==(const Bssid&, const Bssid&) = default;
  friend auto operator<=>(const Bssid&, const Bssid&) = default;
};

}  // namespace beaconcast
