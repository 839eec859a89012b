// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/metrics.hpp"

#include <algorithm>
#include <string>

#include "beaconcast/error.hpp"

namespace beaconcast::metrics {

const char* to_string(EventStatus status) noexcept {
  switch (status) {
    case EventStatus::kLost: return "LOST";
    case EventStatus::kIncomplete: return "INCOMPLETE";
    case EventStatus::kDuplicate: return "DUPLICATE";
    case EventStatus::kCompleted: return "COMPLETED";
    case EventStatus::kReset: return "RESET";
    case EventStatus::kConflict: return "CONFLICT";
  }
  return "?";
}

EventStatus from_reassembly(codec::ReassemblyStatus status) noexcept {
  switch (status) {
    case codec::ReassemblyStatus::kIncomplete: return EventStatus::kIncomplete;
    case codec::ReassemblyStatus::kDuplicate: return EventStatus::kDuplicate;
    case codec::ReassemblyStatus::kCompleted: return EventStatus::kCompleted;
    case codec::ReassemblyStatus::kReset: return EventStatus::kReset;
  }
  return EventStatus::kConflict;
}

const NetworkOutcome* VehicleStats::find(std::string_view network) const noexcept {
  auto it = std::lower_bound(networks.begin(), networks.end(), network,
                             [](const NetworkOutcome& o, std::string_view n) { return o.network < n; });
  return it != networks.end() && it->network == network ? &*it : nullptr;
}

namespace {

struct Tally {
  std::uint64_t entered = 0;
  std::uint64_t failed = 0;
  std::uint64_t failed_on_approach = 0;
};

std::optional<double> pct(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

AggregateStats aggregate(std::span<const ApStats> per_ap,
                         std::span<const VehicleStats> per_vehicle) {
  AggregateStats agg;
  agg.vehicles = per_vehicle.size();
  for (const auto& ap : per_ap) {
    agg.total_frames_sent += ap.frames_sent;
    // Networks nobody entered still get a (null) row.
    agg.message_loss_pct.emplace(ap.ssid, std::nullopt);
    agg.approach_loss_pct.emplace(ap.ssid, std::nullopt);
    agg.vehicles_entered.emplace(ap.ssid, 0);
  }

  std::map<std::string, Tally> tallies;
  std::uint64_t received = 0;
  std::uint64_t lost = 0;
  for (const auto& v : per_vehicle) {
    agg.total_completed_messages += v.completed_messages;
    agg.total_dropped_messages += v.dropped_messages;
    received += v.frames_received;
    lost += v.frames_lost;
    for (const auto& o : v.networks) {
      Tally& t = tallies[o.network];
      ++t.entered;
      if (!o.completed_s) ++t.failed;
      if (!o.completed_on_approach) ++t.failed_on_approach;
    }
  }
  if (!per_vehicle.empty()) {
    agg.frames_received_per_car = static_cast<double>(received) / static_cast<double>(per_vehicle.size());
    agg.frames_lost_per_car = static_cast<double>(lost) / static_cast<double>(per_vehicle.size());
  }
  for (const auto& [network, t] : tallies) {
    agg.vehicles_entered[network] = t.entered;
    agg.message_loss_pct[network] = pct(t.failed, t.entered);
    agg.approach_loss_pct[network] = pct(t.failed_on_approach, t.entered);
  }
  return agg;
}

double message_loss_pct(std::span<const VehicleStats> per_vehicle, std::string_view network) {
  std::uint64_t entered = 0;
  std::uint64_t failed = 0;
  for (const auto& v : per_vehicle) {
    if (const NetworkOutcome* o = v.find(network)) {
      ++entered;
      if (!o->completed_s) ++failed;
    }
  }
  if (entered == 0)
    throw Error(ErrorCode::kUndefinedMetric,
                "no vehicle entered the coverage of network '" + std::string(network) + "'");
  return 100.0 * static_cast<double>(failed) / static_cast<double>(entered);
}

double message_loss_pct(const RunResult& result, std::string_view network) {
  return message_loss_pct(result.per_vehicle, network);
}

bool topic_filter(std::span<const std::uint8_t> payload, const mobility::Vehicle& vehicle) {
  if (vehicle.subscribed_topics.empty()) return true;
  const auto topic = parse_topic(payload);
  return topic && vehicle.subscribed_topics.contains(*topic);
}

bool topic_filter(const Message& completed, const mobility::Vehicle& vehicle) {
  return topic_filter(completed.payload, vehicle);
}

}  // namespace beaconcast::metrics
