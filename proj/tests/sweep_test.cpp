// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "beaconcast/error.hpp"
#include "beaconcast/scenario_io.hpp"
#include "beaconcast/sweep.hpp"

namespace beaconcast::sweep {
namespace {

// Small base scenario so the grid runs quickly.
constexpr const char* kSweep = R"({
  "schema_version": 1,
  "base": {
    "schema_version": 1,
    "duration_s": 120,
    "road": {"points": [[0, 0], [1000, 0]]},
    "traffic": {"kind": "uniform_flow", "count": 20, "headway_s": 2},
    "aps": [{"position": [500, 0], "ssid": "net"}]
  },
  "loss_ps": [0.05, 0.1],
  "message_sizes_bytes": [16384, 32768, 49152, 65536, 81920, 98304, 114688],
  "replications": 2,
  "base_seed": 40
})";

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Sweep, ReferenceGridHasFourteenPoints) {
  const auto spec = parse_sweep(kSweep);
  EXPECT_EQ(spec.loss_ps.size() * spec.message_sizes_bytes.size(), 14u);
  const auto rows = run_sweep(spec, 2);
  ASSERT_EQ(rows.size(), 28u);
  EXPECT_EQ(summarize(rows).size(), 14u);
  EXPECT_EQ(count_lines(rows_to_csv(rows)), 29u);
}

TEST(Sweep, RowOrderAndSeeds) {
  const auto rows = run_sweep(parse_sweep(kSweep), 3);
  std::size_t i = 0;
  for (double loss : {0.05, 0.1})
    for (std::uint64_t size : {16384, 32768, 49152, 65536, 81920, 98304, 114688})
      for (std::uint32_t r = 0; r < 2; ++r, ++i) {
        EXPECT_EQ(rows[i].loss_p, loss);
        EXPECT_EQ(rows[i].size_bytes, size);
        EXPECT_EQ(rows[i].replication, r);
        EXPECT_EQ(rows[i].seed, 40u + r);
      }
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto spec = parse_sweep(kSweep);
  EXPECT_EQ(rows_to_csv(run_sweep(spec, 1)), rows_to_csv(run_sweep(spec, 4)));
}

TEST(Sweep, SinglePointSingleReplication) {
  auto spec = parse_sweep(kSweep);
  spec.loss_ps = {0.1};
  spec.message_sizes_bytes = {16384};
  spec.replications = 1;
  EXPECT_EQ(run_sweep(spec).size(), 1u);
}

TEST(Sweep, TenReplicationsUseDistinctSeeds) {
  auto spec = parse_sweep(kSweep);
  spec.loss_ps = {0.1};
  spec.message_sizes_bytes = {16384};
  spec.replications = 10;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 10u);
  std::set<std::uint64_t> seeds;
  for (const auto& r : rows) seeds.insert(r.seed);
  EXPECT_EQ(seeds.size(), 10u);
}

TEST(Sweep, PointScenarioOverridesEveryAp) {
  const auto spec = parse_sweep(kSweep);
  const auto sc = point_scenario(spec, 0.1, 32768, 3);
  EXPECT_EQ(sc.seed, 43u);
  EXPECT_DOUBLE_EQ(sc.aps[0].channel.loss_p, 0.1);
  EXPECT_EQ(sc.aps[0].message.size_bytes, 32768u);
}

TEST(Sweep, CsvHeader) {
  auto spec = parse_sweep(kSweep);
  spec.loss_ps = {0.05};
  spec.message_sizes_bytes = {16384};
  spec.replications = 1;
  const std::string csv = rows_to_csv(run_sweep(spec));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "loss_p,size_bytes,message_loss_pct,replication,seed");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1), "0.05,16384,0.000000,0,40\n");
}

TEST(Sweep, Validation) {
  auto bad = [](const std::string& text) {
    try {
      parse_sweep(text);
    } catch (const SchemaError& e) {
      return e.diagnostics().front().path;
    }
    return std::string("accepted");
  };
  std::string t = kSweep;
  EXPECT_EQ(bad(std::string(t).replace(t.find("\"replications\": 2"), 17, "\"replications\": 0")),
            "/replications");
  EXPECT_EQ(bad(std::string(t).replace(t.find("[0.05, 0.1]"), 11, "[]")), "/loss_ps");
  EXPECT_EQ(bad(std::string(t).replace(t.find("[0.05, 0.1]"), 11, "[1.2]")), "/loss_ps/0");
  EXPECT_EQ(bad(std::string(t).replace(t.find("\"duration_s\": 120"), 17, "\"duration_s\": -1")),
            "/base/duration_s");
}

TEST(Sweep, ShippedReferenceFile) {
  const auto spec = parse_sweep(read_text_file(BEACONCAST_SCENARIO_DIR "/reference_sweep.json"),
                                BEACONCAST_SCENARIO_DIR);
  EXPECT_EQ(spec.loss_ps.size(), 2u);
  EXPECT_EQ(spec.message_sizes_bytes.size(), 7u);
  EXPECT_EQ(spec.replications, 10u);
  EXPECT_GE(spec.base.traffic.count, 400u);
}

}  // namespace
}  // namespace beaconcast::sweep
