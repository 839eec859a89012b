// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "beaconcast/types.hpp"

namespace beaconcast {

inline constexpr std::size_t kMaxTopicLength = 64;

// Application-level message. The first payload byte is the topic length
// (0 = untagged), followed by the topic bytes and the body. The transport
// never looks inside.
struct Message {
  Bytes payload;

  static Message compose(std::string_view topic, std::span<const std::uint8_t> body);
  // Builds a payload of exactly `total_size` bytes: header, topic, then
  // pseudo-random filler derived from `content_seed`.
  static Message synthesize(std::size_t total_size, std::string_view topic,
                            std::uint64_t content_seed);

  // Topic carried in the header; nullopt for untagged or malformed headers.
  std::optional<std::string> topic() const;
  std::span<const std::uint8_t> body() const;
};

std::optional<std::string> parse_topic(std::span<const std::uint8_t> payload);

}  // namespace beaconcast
