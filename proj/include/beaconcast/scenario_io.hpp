// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Scenario documents (JSON, schema_version 1), canonical result documents,
// and the per-frame event CSV.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "beaconcast/metrics.hpp"
#include "beaconcast/scenario.hpp"

namespace beaconcast {

inline constexpr int kSchemaVersion = 1;

// Throws Error(kParse) with line/column for malformed JSON and SchemaError
// with one diagnostic per offending field otherwise. Missing optional fields
// take their documented defaults (90 m, 10 ms, accumulate, 60-70 km/h).
Scenario parse_scenario(std::string_view text);
Scenario scenario_from_json(const nlohmann::json& doc);

// Normalized document with every default made explicit.
nlohmann::json scenario_to_json(const Scenario& scenario);

// SHA-256 (hex) of the compact canonical scenario document.
std::string scenario_digest(const Scenario& scenario);
std::string sha256_hex(std::string_view bytes);

nlohmann::json result_to_json(const metrics::RunResult& result);

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& doc);

// time_s,ap_index,vehicle_id,seq_no,delivered,status
std::string events_csv_header();
std::string events_to_csv(std::span<const metrics::FrameEvent> events);
std::string format_time_s(SimTime t);

// Throughput calculator report; the message block appears when a size is
// given, the advisory missing-fragment estimate when a loss probability is.
nlohmann::json analytic_report(double range_m, double speed_kmh, double interval_ms,
                               std::optional<std::uint64_t> size_bytes,
                               std::optional<double> loss_p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace beaconcast
