// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/scenario.hpp"

#include <cmath>
#include <set>
#include <string>

#include "beaconcast/error.hpp"

namespace beaconcast {

Message MessageSpec::build() const {
  if (text) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(text->data());
    return Message::compose(topic, std::span<const std::uint8_t>(p, text->size()));
  }
  return Message::synthesize(static_cast<std::size_t>(size_bytes), topic, content_seed);
}

namespace {

class Checker {
 public:
  void check(bool ok, std::string path, std::string message) {
    if (!ok) issues_.push_back({std::move(path), std::move(message)});
  }

  // Runs a component validator, reporting its complaint under `path`.
  template <typename Fn>
  void delegate(const std::string& path, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      issues_.push_back({path, e.what()});
    }
  }

  void finish() {
    if (!issues_.empty()) throw SchemaError(std::move(issues_));
  }

 private:
  std::vector<Diagnostic> issues_;
};

std::string num(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

void Scenario::validate() const {
  Checker c;
  c.check(std::isfinite(duration_s) && duration_s > 0.0, "/duration_s",
          "must be a positive number of seconds, got " + num(duration_s));
  c.check(road.points().size() >= 2, "/road/points", "road needs at least two distinct points");
  c.check(!aps.empty(), "/aps", "scenario needs at least one access point");

  std::set<Bssid> bssids;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    const auto& ap = aps[i];
    const std::string base = "/aps/" + std::to_string(i);
    c.check(std::isfinite(ap.position.x) && std::isfinite(ap.position.y), base + "/position",
            "must be a finite point");
    c.check(!ap.ssid.empty() && ap.ssid.size() <= kMaxSsidLength, base + "/ssid",
            "must hold 1..32 bytes, got " + std::to_string(ap.ssid.size()));
    c.check(bssids.insert(ap.bssid).second, base + "/bssid",
            "bssid " + ap.bssid.to_string() + " is already used by another AP");

    const auto& s = ap.schedule;
    c.check(s.interval_ms >= channel::kMinIntervalMs && s.interval_ms <= channel::kMaxIntervalMs,
            base + "/schedule/interval_ms",
            "must be within [1, 65535] ms, got " + std::to_string(s.interval_ms));
    c.check(std::isfinite(s.start_s) && s.start_s >= 0.0, base + "/schedule/start_s",
            "must be non-negative, got " + num(s.start_s));
    c.check(std::isfinite(s.end_s) && s.end_s >= s.start_s, base + "/schedule/end_s",
            "must not precede start_s (" + num(s.start_s) + "), got " + num(s.end_s));
    c.check(!(s.end_s > duration_s), base + "/schedule/end_s",
            "schedule ends at " + num(s.end_s) + " s, past the scenario duration " +
                num(duration_s) + " s");

    c.check(std::isfinite(ap.channel.range_m) && ap.channel.range_m > 0.0,
            base + "/channel/range_m", "must be positive, got " + num(ap.channel.range_m));
    c.check(ap.channel.loss_p >= 0.0 && ap.channel.loss_p <= 1.0, base + "/channel/loss_p",
            "must be within [0, 1], got " + num(ap.channel.loss_p));

    const auto& m = ap.message;
    c.check(m.topic.size() <= kMaxTopicLength, base + "/message/topic",
            "must hold at most 64 bytes, got " + std::to_string(m.topic.size()));
    const std::uint64_t size = m.text ? 1 + m.topic.size() + m.text->size() : m.size_bytes;
    c.check(size >= 1 && size <= codec::kMaxMessageSize, base + "/message/size_bytes",
            "must be within [1, 16384000] bytes, got " + std::to_string(size));
    c.check(m.text || size >= 1 + m.topic.size(), base + "/message/size_bytes",
            "must leave room for the " + std::to_string(1 + m.topic.size()) +
                "-byte topic header");
  }

  c.delegate("/traffic", [&] { traffic.validate(); });
  c.finish();
}

}  // namespace beaconcast
