// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "beaconcast/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "beaconcast/error.hpp"
#include "beaconcast/rng.hpp"

namespace beaconcast::mobility {

Road::Road(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "road needs at least two points");
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double seg = std::hypot(points_[i].x - points_[i - 1].x, points_[i].y - points_[i - 1].y);
    if (!(seg > 0.0) || !std::isfinite(seg))
      throw Error(ErrorCode::kInvalidArgument,
                  "road points " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " coincide");
    cumulative_.push_back(cumulative_.back() + seg);
  }
}

std::optional<Point> Road::point_at(double s) const noexcept {
  if (points_.size() < 2 || s < 0.0 || s > length_m()) return std::nullopt;
  // Segment i spans [cumulative_[i], cumulative_[i + 1]].
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  if (i + 1 >= points_.size()) i = points_.size() - 2;
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double u = (s - cumulative_[i]) / seg;
  const Point& a = points_[i];
  const Point& b = points_[i + 1];
  return Point{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

std::optional<Point> position_at(const Road& road, const Vehicle& v, double t_s) noexcept {
  if (t_s < v.spawn_time_s) return std::nullopt;
  return road.point_at((t_s - v.spawn_time_s) * v.speed_mps);
}

std::vector<TimeInterval> coverage_intervals(const Road& road, const Vehicle& v, Point ap,
                                             double range_m) {
  std::vector<TimeInterval> out;
  const auto& pts = road.points();
  const auto& cum = road.cumulative();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1].x - pts[i].x;
    const double dy = pts[i + 1].y - pts[i].y;
    const double fx = pts[i].x - ap.x;
    const double fy = pts[i].y - ap.y;
    const double a = dx * dx + dy * dy;
    const double b = 2.0 * (dx * fx + dy * fy);
    const double c = fx * fx + fy * fy - range_m * range_m;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const double u_in = std::max(0.0, (-b - root) / (2.0 * a));
    const double u_out = std::min(1.0, (-b + root) / (2.0 * a));
    if (u_in > u_out) continue;
    const double seg = cum[i + 1] - cum[i];
    const double enter = v.spawn_time_s + (cum[i] + u_in * seg) / v.speed_mps;
    const double exit = v.spawn_time_s + (cum[i] + u_out * seg) / v.speed_mps;
    if (!out.empty() && enter <= out.back().exit_s + 1e-9)
      out.back().exit_s = std::max(out.back().exit_s, exit);
    else
      out.push_back({enter, exit});
  }
  return out;
}

std::optional<TimeInterval> dwell_interval(const Road& road, const Vehicle& v, Point ap,
                                           double range_m) {
  auto all = coverage_intervals(road, v, ap, range_m);
  if (all.empty()) return std::nullopt;
  return all.front();
}

const char* to_string(TrafficModel::Kind kind) noexcept {
  switch (kind) {
    case TrafficModel::Kind::kExplicit: return "explicit";
    case TrafficModel::Kind::kUniformFlow: return "uniform_flow";
    case TrafficModel::Kind::kPoisson: return "poisson";
  }
  return "?";
}

void TrafficModel::validate() const {
  if (kind == Kind::kExplicit) {
    if (vehicles.empty())
      throw Error(ErrorCode::kInvalidArgument, "explicit traffic needs at least one vehicle");
    std::set<std::uint32_t> ids;
    for (const auto& v : vehicles) {
      if (!(v.speed_mps > 0.0) || !std::isfinite(v.speed_mps))
        throw Error(ErrorCode::kInvalidArgument,
                    "vehicle " + std::to_string(v.id) + " needs a positive speed");
      if (!std::isfinite(v.spawn_time_s) || v.spawn_time_s < 0.0)
        throw Error(ErrorCode::kInvalidArgument,
                    "vehicle " + std::to_string(v.id) + " needs a non-negative spawn time");
      if (!ids.insert(v.id).second)
        throw Error(ErrorCode::kInvalidArgument,
                    "vehicle id " + std::to_string(v.id) + " is not unique");
    }
    return;
  }
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "traffic count must be >= 1");
  if (!(speed_kmh_min > 0.0) || !(speed_kmh_min <= speed_kmh_max) || !std::isfinite(speed_kmh_max))
    throw Error(ErrorCode::kInvalidArgument, "speed band must satisfy 0 < min <= max");
  if (!std::isfinite(start_s) || start_s < 0.0)
    throw Error(ErrorCode::kInvalidArgument, "traffic start_s must be non-negative");
  if (kind == Kind::kUniformFlow && (!(headway_s > 0.0) || !std::isfinite(headway_s)))
    throw Error(ErrorCode::kInvalidArgument, "headway_s must be positive");
  if (kind == Kind::kPoisson && (!(rate_per_s > 0.0) || !std::isfinite(rate_per_s)))
    throw Error(ErrorCode::kInvalidArgument, "rate_per_s must be positive");
}

std::vector<Vehicle> generate_vehicles(const TrafficModel& model, std::mt19937_64& stream) {
  model.validate();
  if (model.kind == TrafficModel::Kind::kExplicit) return model.vehicles;

  std::vector<Vehicle> out;
  out.reserve(model.count);
  double arrival = model.start_s;
  for (std::uint32_t k = 0; k < model.count; ++k) {
    Vehicle v;
    v.id = k;
    if (model.kind == TrafficModel::Kind::kUniformFlow) {
      v.spawn_time_s = model.start_s + k * model.headway_s;
    } else {
      arrival += -std::log1p(-unit_draw(stream)) / model.rate_per_s;
      v.spawn_time_s = arrival;
    }
    const double kmh =
        model.speed_kmh_min + unit_draw(stream) * (model.speed_kmh_max - model.speed_kmh_min);
    v.speed_mps = kmh_to_mps(kmh);
    v.subscribed_topics = model.subscribed_topics;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace beaconcast::mobility
