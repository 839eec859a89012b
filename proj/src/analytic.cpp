// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/analytic.hpp"

#include <cmath>

#include "beaconcast/codec.hpp"
#include "beaconcast/error.hpp"

namespace beaconcast::analytic {

namespace {

// Absorbs representation error such as 647.9999999 for an exact 648.
constexpr double kFloorSlack = 1e-9;

std::uint64_t floor_count(double x) {
  return static_cast<std::uint64_t>(std::floor(x + kFloorSlack));
}

}  // namespace

ThroughputEstimate estimate(double range_m, double speed_kmh, double interval_ms) {
  if (!(range_m > 0.0) || !(speed_kmh > 0.0) || !(interval_ms > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "range, speed and interval must all be positive");
  ThroughputEstimate est;
  // range / (speed / 3.6), arranged so exact inputs stay exact.
  const double time_ms = range_m * 3600.0 / speed_kmh;
  est.time_to_ap_s = time_ms / 1000.0;
  est.time_total_s = 2.0 * est.time_to_ap_s;
  est.frames_to_ap = floor_count(time_ms / interval_ms);
  est.frames_total = 2 * est.frames_to_ap;
  est.bytes_to_ap = est.frames_to_ap * codec::kChunkSize;
  est.bytes_total = est.frames_total * codec::kChunkSize;
  return est;
}

RoundedMilestones rounded(const ThroughputEstimate& est, double interval_ms) {
  RoundedMilestones r;
  r.time_to_ap_s = std::round(est.time_to_ap_s * 10.0) / 10.0;
  r.frames_to_ap = static_cast<std::uint64_t>(std::llround(r.time_to_ap_s * 1000.0 / interval_ms));
  r.kb_to_ap = static_cast<std::uint64_t>(std::llround(static_cast<double>(est.bytes_to_ap) / 1024.0));
  r.kb_total = static_cast<std::uint64_t>(std::llround(static_cast<double>(est.bytes_total) / 1024.0));
  return r;
}

std::uint64_t frames_for_message(std::uint64_t size_bytes) {
  if (size_bytes == 0) throw Error(ErrorCode::kInvalidArgument, "message size must be positive");
  return (size_bytes + codec::kChunkSize - 1) / codec::kChunkSize;
}

double loop_time(std::uint64_t size_bytes, double interval_ms) {
  if (!(interval_ms > 0.0)) throw Error(ErrorCode::kInvalidArgument, "interval must be positive");
  return static_cast<double>(frames_for_message(size_bytes)) * interval_ms / 1000.0;
}

std::uint64_t loops_available(const ThroughputEstimate& est, std::uint64_t size_bytes) {
  return est.frames_total / frames_for_message(size_bytes);
}

double expected_missing_fragments(std::uint64_t size_bytes, double loss_p, std::uint64_t loops) {
  return static_cast<double>(frames_for_message(size_bytes)) *
         std::pow(loss_p, static_cast<double>(loops));
}

}  // namespace beaconcast::analytic
