// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// BCAP beacon capture files.
//
//   "BCAP" | version 0x01 | record*
//   record: length u16 BE (bytes that follow) | timestamp_us u64 BE |
//           transmitter 6 B | ssid_len u8 | ssid | vendor_len u8 | vendor
//
// Records appear in timestamp order.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "beaconcast/scenario.hpp"
#include "beaconcast/types.hpp"

namespace beaconcast::capture {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kFileHeaderSize = 5;

struct BeaconFrame {
  std::uint64_t timestamp_us = 0;
  Bssid transmitter;
  std::string ssid;
  Bytes vendor;  // encoded Vendor Specific field

  friend bool operator==(const BeaconFrame&, const BeaconFrame&) = default;
};

// Throws kCaptureFormat when frames are out of order or fields overflow
// their length bytes.
Bytes write_capture(std::span<const BeaconFrame> frames);
// Throws kCaptureFormat on bad magic, unknown version, or inconsistent
// record lengths.
std::vector<BeaconFrame> read_capture(std::span<const std::uint8_t> file);

// Every beacon the scenario emits, in emission order.
std::vector<BeaconFrame> collect_beacons(const Scenario& scenario);

}  // namespace beaconcast::capture
