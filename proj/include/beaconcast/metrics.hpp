// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Statistics catalog for one run: per AP, per vehicle, and the fleet-wide
// aggregate, plus the message loss percentage reported per network.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beaconcast/codec.hpp"
#include "beaconcast/message.hpp"
#include "beaconcast/mobility.hpp"
#include "beaconcast/types.hpp"

namespace beaconcast::metrics {

struct ApStats {
  std::uint32_t index = 0;
  std::string ssid;
  std::string bssid;
  double range_m = 0.0;
  std::uint32_t interval_ms = 0;
  std::uint64_t message_size_bytes = 0;
  std::uint32_t fragments = 0;
  std::uint64_t frames_sent = 0;
  std::uint64_t complete_loops = 0;
  double time_running_s = 0.0;
};

// What one vehicle experienced on one network (SSID).
struct NetworkOutcome {
  std::string network;
  std::uint32_t passes = 0;            // coverage entries
  double first_entry_s = 0.0;
  double first_exit_s = 0.0;           // last in-coverage instant of the first pass
  std::optional<double> completed_s;
  // Completed before the midpoint of the first pass, i.e. on approach.
  bool completed_on_approach = false;
  std::uint32_t distinct_fragments = 0;
  std::uint64_t frames_received = 0;
  std::uint64_t frames_lost = 0;
};

struct VehicleStats {
  std::uint32_t id = 0;
  double spawn_time_s = 0.0;
  double speed_mps = 0.0;
  std::uint64_t completed_messages = 0;
  std::uint64_t dropped_messages = 0;
  std::uint64_t frames_received = 0;
  std::uint64_t duplicate_frames = 0;
  std::uint64_t frames_lost = 0;
  std::uint64_t stored_fragments = 0;   // received frames that added a new chunk
  std::uint64_t rejected_frames = 0;    // received but discarded (strict gaps, conflicts)
  std::uint64_t filtered_messages = 0;  // completed but outside the subscribed topics
  std::uint64_t corrupted_messages = 0; // completed payload differs from the sender's
  std::vector<NetworkOutcome> networks; // sorted by network name

  std::uint64_t frames_offered() const noexcept { return frames_received + frames_lost; }
  const NetworkOutcome* find(std::string_view network) const noexcept;
};

struct AggregateStats {
  std::uint64_t vehicles = 0;
  std::uint64_t total_frames_sent = 0;
  std::uint64_t total_completed_messages = 0;
  std::uint64_t total_dropped_messages = 0;
  double frames_received_per_car = 0.0;
  double frames_lost_per_car = 0.0;
  std::map<std::string, std::uint64_t> vehicles_entered;
  // nullopt when no vehicle entered that network.
  std::map<std::string, std::optional<double>> message_loss_pct;
  // Same, counting only completions before the first pass midpoint.
  std::map<std::string, std::optional<double>> approach_loss_pct;
};

enum class EventStatus : std::uint8_t {
  kLost,
  kIncomplete,
  kDuplicate,
  kCompleted,
  kReset,
  kConflict,
};

const char* to_string(EventStatus status) noexcept;
EventStatus from_reassembly(codec::ReassemblyStatus status) noexcept;

// One offered frame: an emission heard by an in-range vehicle.
struct FrameEvent {
  SimTime time_us = 0;
  std::uint32_t vehicle_id = 0;
  std::uint16_t ap_index = 0;
  std::uint16_t seq_no = 0;
  bool delivered = false;
  EventStatus status = EventStatus::kLost;

  friend bool operator==(const FrameEvent&, const FrameEvent&) = default;
};

struct RunResult {
  std::string scenario_digest;
  std::uint64_t seed = 0;
  codec::Policy policy = codec::Policy::kAccumulate;
  std::vector<ApStats> per_ap;
  std::vector<VehicleStats> per_vehicle;
  AggregateStats aggregate;
  std::vector<FrameEvent> events;  // only when requested
};

// Folds per-AP and per-vehicle records into the aggregate.
AggregateStats aggregate(std::span<const ApStats> per_ap,
                         std::span<const VehicleStats> per_vehicle);

// Percentage of vehicles that entered the network's coverage and never
// completed its message. Throws kUndefinedMetric when nobody entered.
double message_loss_pct(std::span<const VehicleStats> per_vehicle, std::string_view network);
double message_loss_pct(const RunResult& result, std::string_view network);

// Accepts when the vehicle subscribes to nothing (accept-all) or to the
// message topic. Untagged messages only pass accept-all vehicles.
bool topic_filter(const Message& completed, const mobility::Vehicle& vehicle);
bool topic_filter(std::span<const std::uint8_t> payload, const mobility::Vehicle& vehicle);

}  // namespace beaconcast::metrics
