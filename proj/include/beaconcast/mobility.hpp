// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "beaconcast/types.hpp"

namespace beaconcast::mobility {

inline constexpr double kDefaultSpeedKmhMin = 60.0;
inline constexpr double kDefaultSpeedKmhMax = 70.0;

inline constexpr double kmh_to_mps(double kmh) noexcept { return kmh / 3.6; }

// Single-lane polyline road.
class Road {
 public:
  Road() = default;
  // Throws kInvalidArgument for fewer than two points or repeated consecutive
  // points.
  explicit Road(std::vector<Point> points);

  const std::vector<Point>& points() const noexcept { return points_; }
  double length_m() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  // Arc length at the start of each point.
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }

  // Point at arc length s; nullopt outside [0, length].
  std::optional<Point> point_at(double s) const noexcept;

 private:
  std::vector<Point> points_;
  std::vector<double> cumulative_;
};

struct Vehicle {
  std::uint32_t id = 0;
  double spawn_time_s = 0.0;
  double speed_mps = 0.0;
  std::set<std::string> subscribed_topics;  // empty accepts everything

  double despawn_time_s(const Road& road) const noexcept {
    return spawn_time_s + road.length_m() / speed_mps;
  }
};

// Position after constant-speed travel from the road start; nullopt before
// spawn or past the road end.
std::optional<Point> position_at(const Road& road, const Vehicle& v, double t_s) noexcept;

struct TimeInterval {
  double enter_s = 0.0;
  double exit_s = 0.0;

  double width() const noexcept { return exit_s - enter_s; }
};

// Every maximal interval during which the vehicle is inside the closed disk,
// in time order. Computed exactly per segment and merged at joints.
std::vector<TimeInterval> coverage_intervals(const Road& road, const Vehicle& v, Point ap,
                                             double range_m);

// The first maximal in-range interval, if the path ever meets the disk.
std::optional<TimeInterval> dwell_interval(const Road& road, const Vehicle& v, Point ap,
                                           double range_m);

struct TrafficModel {
  enum class Kind { kExplicit, kUniformFlow, kPoisson };

  Kind kind = Kind::kUniformFlow;
  std::vector<Vehicle> vehicles;  // kExplicit
  double headway_s = 2.0;          // kUniformFlow
  double rate_per_s = 0.5;         // kPoisson
  std::uint32_t count = 1;
  double start_s = 0.0;
  double speed_kmh_min = kDefaultSpeedKmhMin;
  double speed_kmh_max = kDefaultSpeedKmhMax;
  std::set<std::string> subscribed_topics;  // given to generated vehicles

  void validate() const;  // throws kInvalidArgument
};

const char* to_string(TrafficModel::Kind kind) noexcept;

// Explicit lists are returned as given. Generated fleets draw, per vehicle in
// order, the inter-arrival gap (Poisson only) then the speed.
std::vector<Vehicle> generate_vehicles(const TrafficModel& model, std::mt19937_64& stream);

}  // namespace beaconcast::mobility
