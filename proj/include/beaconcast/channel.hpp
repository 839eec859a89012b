// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "beaconcast/rng.hpp"
#include "beaconcast/types.hpp"

namespace beaconcast::channel {

inline constexpr double kDefaultRangeM = 90.0;
inline constexpr std::uint32_t kDefaultIntervalMs = 10;
inline constexpr std::uint32_t kMinIntervalMs = 1;
inline constexpr std::uint32_t kMaxIntervalMs = 65535;

struct ChannelParams {
  double range_m = kDefaultRangeM;
  double loss_p = 0.0;

  void validate() const;  // throws kInvalidArgument
};

struct BeaconSchedule {
  std::uint32_t interval_ms = kDefaultIntervalMs;
  double start_s = 0.0;
  double end_s = 0.0;

  void validate() const;  // throws kInvalidArgument
};

// Closed disk: a receiver exactly at range_m hears the transmitter.
bool in_range(Point ap, Point vehicle, double range_m) noexcept;

// One Bernoulli draw per (frame, receiver) pair. A frame is delivered when
// the unit draw is at or above loss_p, so loss_p = 0 always delivers and
// loss_p = 1 never does; with a fixed stream, raising loss_p can only turn
// deliveries into losses.
inline bool delivery_draw(std::mt19937_64& stream, double loss_p) {
  return unit_draw(stream) >= loss_p;
}

// Exact emission clock in microseconds: start + k * interval for every k with
// the result strictly below end.
class EmissionClock {
 public:
  explicit EmissionClock(const BeaconSchedule& schedule);
  EmissionClock(SimTime start_us, SimTime end_us, SimTime interval_us);

  std::uint64_t count() const noexcept { return count_; }
  SimTime at(std::uint64_t k) const noexcept {
    return start_us_ + static_cast<SimTime>(k) * interval_us_;
  }
  SimTime start() const noexcept { return start_us_; }
  SimTime end() const noexcept { return end_us_; }
  SimTime interval() const noexcept { return interval_us_; }

 private:
  SimTime start_us_;
  SimTime end_us_;
  SimTime interval_us_;
  std::uint64_t count_;
};

std::vector<double> emission_times(const BeaconSchedule& schedule);

}  // namespace beaconcast::channel
