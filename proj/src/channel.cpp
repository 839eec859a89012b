// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/channel.hpp"

#include <cmath>
#include <string>

#include "beaconcast/error.hpp"

namespace beaconcast::channel {

void ChannelParams::validate() const {
  if (!(range_m > 0.0) || !std::isfinite(range_m))
    throw Error(ErrorCode::kInvalidArgument, "range_m must be a positive finite distance");
  if (!(loss_p >= 0.0 && loss_p <= 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "loss_p must be a probability in [0, 1], got " + std::to_string(loss_p));
}

void BeaconSchedule::validate() const {
  if (interval_ms < kMinIntervalMs || interval_ms > kMaxIntervalMs)
    throw Error(ErrorCode::kInvalidArgument,
                "interval_ms must be in [1, 65535], got " + std::to_string(interval_ms));
  if (!std::isfinite(start_s) || !std::isfinite(end_s) || start_s < 0.0)
    throw Error(ErrorCode::kInvalidArgument, "schedule window must be finite and non-negative");
  // An empty window (start == end) is accepted and emits nothing.
  if (end_s < start_s)
    throw Error(ErrorCode::kInvalidArgument, "schedule end_s precedes start_s");
}

bool in_range(Point ap, Point vehicle, double range_m) noexcept {
  return std::hypot(vehicle.x - ap.x, vehicle.y - ap.y) <= range_m;
}

EmissionClock::EmissionClock(const BeaconSchedule& schedule)
    : EmissionClock(seconds_to_sim(schedule.start_s), seconds_to_sim(schedule.end_s),
                    static_cast<SimTime>(schedule.interval_ms) * kMicrosPerMilli) {}

EmissionClock::EmissionClock(SimTime start_us, SimTime end_us, SimTime interval_us)
    : start_us_(start_us), end_us_(end_us), interval_us_(interval_us) {
  count_ = end_us_ > start_us_
               ? static_cast<std::uint64_t>((end_us_ - start_us_ + interval_us_ - 1) / interval_us_)
               : 0;
}

std::vector<double> emission_times(const BeaconSchedule& schedule) {
  schedule.validate();
  const EmissionClock clock(schedule);
  std::vector<double> out;
  out.reserve(clock.count());
  for (std::uint64_t k = 0; k < clock.count(); ++k) out.push_back(sim_to_seconds(clock.at(k)));
  return out;
}

}  // namespace beaconcast::channel
