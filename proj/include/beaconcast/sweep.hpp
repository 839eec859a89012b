// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

// Message size x loss probability grids with seeded replications.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "beaconcast/scenario.hpp"

namespace beaconcast::sweep {

struct SweepSpec {
  Scenario base;
  std::vector<std::uint64_t> message_sizes_bytes;
  std::vector<double> loss_ps;
  std::uint32_t replications = 1;
  std::uint64_t base_seed = 0;  // replication r runs with base_seed + r

  void validate() const;  // throws SchemaError
};

// `base_dir` resolves a relative "base_path" reference.
SweepSpec parse_sweep(std::string_view text, const std::string& base_dir = ".");

struct SweepRow {
  double loss_p = 0.0;
  std::uint64_t size_bytes = 0;
  std::optional<double> message_loss_pct;  // nullopt: nobody entered coverage
  std::uint32_t replication = 0;
  std::uint64_t seed = 0;
};

struct SweepPoint {
  double loss_p = 0.0;
  std::uint64_t size_bytes = 0;
  double mean_loss_pct = 0.0;
  std::uint32_t replications = 0;  // rows with a defined metric
};

// The scenario that grid point (loss, size) replication r runs.
Scenario point_scenario(const SweepSpec& spec, double loss_p, std::uint64_t size_bytes,
                        std::uint32_t replication);

// Rows in loss-major, size-minor, replication-last order of the spec's lists,
// whatever `jobs` is. The metric is taken on the first AP's network.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs = 1,
                                const std::function<void(std::size_t done, std::size_t total)>&
                                    progress = {});

std::vector<SweepPoint> summarize(const std::vector<SweepRow>& rows);

std::string rows_to_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace beaconcast::sweep
