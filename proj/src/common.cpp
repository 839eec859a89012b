// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <utility>

#include "beaconcast/error.hpp"
#include "beaconcast/message.hpp"
#include "beaconcast/types.hpp"

namespace beaconcast {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidMessage: return "invalid-message";
    case ErrorCode::kMessageTooLarge: return "message-too-large";
    case ErrorCode::kTruncatedField: return "truncated-field";
    case ErrorCode::kOversizeField: return "oversize-field";
    case ErrorCode::kUnknownTag: return "unknown-tag";
    case ErrorCode::kInconsistentTag: return "inconsistent-tag";
    case ErrorCode::kConflictingTotal: return "conflicting-total";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kSchema: return "schema-violation";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kCaptureFormat: return "capture-format";
    case ErrorCode::kNotFound: return "not-found";
  }
  return "unknown";
}

SimTime seconds_to_sim(double seconds) noexcept {
  return static_cast<SimTime>(std::llround(seconds * static_cast<double>(kMicrosPerSecond)));
}

double sim_to_seconds(SimTime t) noexcept {
  return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

Bssid Bssid::parse(const std::string& text) {
  Bssid out;
  unsigned v[6];
  char tail = 0;
  if (text.size() != 17 ||
      std::sscanf(text.c_str(), "%2x:%2x:%2x:%2x:%2x:%2x%c", &v[0], &v[1], &v[2], &v[3], &v[4],
                  &v[5], &tail) != 6)
    throw Error(ErrorCode::kInvalidArgument,
                "bssid '" + text + "' is not of the form aa:bb:cc:dd:ee:ff");
  for (int i = 0; i < 6; ++i) out.octets[i] = static_cast<std::uint8_t>(v[i]);
  return out;
}

std::string Bssid::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x", octets[0], octets[1],
                octets[2], octets[3], octets[4], octets[5]);
  return buf;
}

Message Message::compose(std::string_view topic, std::span<const std::uint8_t> body) {
  if (topic.size() > kMaxTopicLength)
    throw Error(ErrorCode::kInvalidMessage,
                "topic longer than " + std::to_string(kMaxTopicLength) + " bytes");
  Message m;
  m.payload.reserve(1 + topic.size() + body.size());
  m.payload.push_back(static_cast<std::uint8_t>(topic.size()));
  m.payload.insert(m.payload.end(), topic.begin(), topic.end());
  m.payload.insert(m.payload.end(), body.begin(), body.end());
  return m;
}

Message Message::synthesize(std::size_t total_size, std::string_view topic,
                            std::uint64_t content_seed) {
  if (total_size < 1 + topic.size())
    throw Error(ErrorCode::kInvalidMessage,
                "message size " + std::to_string(total_size) + " cannot hold its " +
                    std::to_string(topic.size()) + "-byte topic header");
  Bytes body(total_size - 1 - topic.size());
  std::mt19937_64 gen(content_seed);
  for (std::size_t i = 0; i < body.size(); i += 8) {
    std::uint64_t word = gen();
    for (std::size_t j = i; j < std::min(i + 8, body.size()); ++j) {
      body[j] = static_cast<std::uint8_t>(word & 0xFF);
      word >>= 8;
    }
  }
  return compose(topic, body);
}

std::optional<std::string> parse_topic(std::span<const std::uint8_t> payload) {
  if (payload.empty()) return std::nullopt;
  const std::size_t len = payload[0];
  if (len == 0 || len > kMaxTopicLength || payload.size() < 1 + len) return std::nullopt;
  return std::string(payload.begin() + 1, payload.begin() + 1 + static_cast<std::ptrdiff_t>(len));
}

std::optional<std::string> Message::topic() const { return parse_topic(payload); }

std::span<const std::uint8_t> Message::body() const {
  if (payload.empty()) return {};
  const std::size_t skip = std::min<std::size_t>(payload.size(), 1u + payload[0]);
  return std::span<const std::uint8_t>(payload).subspan(skip);
}

}  // namespace beaconcast

#include "beaconcast/rng.hpp"

namespace beaconcast {

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  std::uint64_t z = seed ^ (static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace beaconcast

namespace beaconcast {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += (d.path.empty() ? std::string("/") : d.path) + ": " + d.message;
  }
  return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::kSchema, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace beaconcast
