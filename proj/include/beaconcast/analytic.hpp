// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form throughput arithmetic for one AP on a straight road.

#pragma once

#include <cstdint>
#include <optional>

namespace beaconcast::analytic {

struct ThroughputEstimate {
  double time_to_ap_s = 0.0;  // range / speed: disk edge to the AP
  double time_total_s = 0.0;  // full diameter
  std::uint64_t frames_to_ap = 0;
  std::uint64_t frames_total = 0;
  std::uint64_t bytes_to_ap = 0;
  std::uint64_t bytes_total = 0;
};

// The same milestones rounded the way they are usually quoted: time to one
// decimal, frames from the rounded time, kilobytes (1024 B) to an integer.
struct RoundedMilestones {
  double time_to_ap_s = 0.0;
  std::uint64_t frames_to_ap = 0;
  std::uint64_t kb_to_ap = 0;
  std::uint64_t kb_total = 0;
};

// Throws kInvalidArgument unless every input is positive.
ThroughputEstimate estimate(double range_m, double speed_kmh, double interval_ms);
RoundedMilestones rounded(const ThroughputEstimate& est, double interval_ms);

std::uint64_t frames_for_message(std::uint64_t size_bytes);
double loop_time(std::uint64_t size_bytes, double interval_ms);

// Loops of the message that fit in the full traversal.
std::uint64_t loops_available(const ThroughputEstimate& est, std::uint64_t size_bytes);

// Advisory heuristic N * p^k: fragments still expected missing after k loops
// at loss probability p.
double expected_missing_fragments(std::uint64_t size_bytes, double loss_p, std::uint64_t loops);

}  // namespace beaconcast::analytic
