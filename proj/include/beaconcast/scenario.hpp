// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beaconcast/channel.hpp"
#include "beaconcast/codec.hpp"
#include "beaconcast/message.hpp"
#include "beaconcast/mobility.hpp"
#include "beaconcast/types.hpp"

namespace beaconcast {

inline constexpr std::size_t kMaxSsidLength = 32;

// How an AP's message is produced. Either `text` is used verbatim as the
// body, or `size_bytes` of deterministic filler are generated from
// `content_seed`. Identical specs yield identical payloads, so same-name APs
// can share one message.
struct MessageSpec {
  std::uint64_t size_bytes = 16 * 1024;  // whole payload, topic header included
  std::string topic;
  std::uint64_t content_seed = 0;
  std::optional<std::string> text;

  Message build() const;
};

struct AccessPointSpec {
  Point position;
  std::string ssid;
  Bssid bssid;
  channel::BeaconSchedule schedule;
  MessageSpec message;
  channel::ChannelParams channel;
  std::uint32_t loop_phase = 0;  // fragment index sent at the first emission
};

struct Scenario {
  mobility::Road road;
  std::vector<AccessPointSpec> aps;
  mobility::TrafficModel traffic;
  codec::Policy reassembly_policy = codec::Policy::kAccumulate;
  double duration_s = 0.0;
  std::uint64_t seed = 0;

  // Throws Error(kSchema) naming the offending field.
  void validate() const;
};

}  // namespace beaconcast
