// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "beaconcast/capture.hpp"
#include "beaconcast/codec.hpp"
#include "beaconcast/error.hpp"
#include "test_support.hpp"

namespace beaconcast::capture {
namespace {

Scenario three_fragment_scenario() {
  auto sc = testing::line_scenario(1000, 500, 700, 0.0, {testing::make_vehicle(0, 0, 60)}, 1.0);
  sc.aps[0].schedule = {100, 0.0, 1.0};
  return sc;
}

TEST(Capture, TenRecordsCyclingFragments) {
  const auto frames = collect_beacons(three_fragment_scenario());
  ASSERT_EQ(frames.size(), 10u);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    EXPECT_EQ(frames[i].timestamp_us, i * 100'000);
    EXPECT_EQ(frames[i].ssid, "net");
    EXPECT_EQ(codec::decode_vendor_field(frames[i].vendor).seq_no, i % 3);
  }
}

TEST(Capture, WireLayout) {
  BeaconFrame f{0x0102030405060708ull, testing::test_bssid(0x0A0B), "ab", {0x00, 0x00, 0x03, 0x7F}};
  const Bytes file = write_capture(std::vector<BeaconFrame>{f});
  const Bytes want = {'B', 'C', 'A', 'P', 0x01,
                      0x00, 22,                                        // record length
                      0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07, 0x08,  // timestamp
                      0x02, 0x00, 0x00, 0x00, 0x0A, 0x0B,              // transmitter
                      0x02, 'a', 'b',                                  // ssid
                      0x04, 0x00, 0x00, 0x03, 0x7F};                   // vendor field
  EXPECT_EQ(file, want);
}

TEST(Capture, RoundTripProperty) {
  std::mt19937_64 g(55);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BeaconFrame> frames(g() % 40);
    std::uint64_t t = 0;
    for (auto& f : frames) {
      t += g() % 1000;
      f.timestamp_us = t;
      for (auto& o : f.transmitter.octets) o = static_cast<std::uint8_t>(g());
      f.ssid.resize(g() % 33);
      for (auto& c : f.ssid) c = static_cast<char>('a' + g() % 26);
      f.vendor.resize(4 + g() % 250);
      for (auto& b : f.vendor) b = static_cast<std::uint8_t>(g());
    }
    EXPECT_EQ(read_capture(write_capture(frames)), frames);
  }
}

TEST(Capture, EmptyScheduleWindowIsHeaderOnly) {
  auto sc = three_fragment_scenario();
  sc.aps[0].schedule = {100, 0.5, 0.5};
  const auto frames = collect_beacons(sc);
  EXPECT_TRUE(frames.empty());
  const Bytes file = write_capture(frames);
  EXPECT_EQ(file, (Bytes{'B', 'C', 'A', 'P', 0x01}));
  EXPECT_TRUE(read_capture(file).empty());
}

TEST(Capture, RejectsDamagedFiles) {
  const Bytes good = write_capture(collect_beacons(three_fragment_scenario()));
  auto expect_bad = [](Bytes b) {
    try {
      read_capture(b);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCaptureFormat);
    }
  };
  expect_bad(Bytes{'B', 'C', 'A'});
  Bytes wrong_version = good;
  wrong_version[4] = 0x02;
  expect_bad(wrong_version);
  expect_bad(Bytes(good.begin(), good.end() - 1));
}

TEST(Capture, TwoApsInterleaveByTime) {
  auto sc = three_fragment_scenario();
  auto second = testing::make_ap({600, 0}, "other", 300, 0, 1.0, 2);
  second.schedule = {150, 0.0, 1.0};
  sc.aps.push_back(second);
  const auto frames = collect_beacons(sc);
  EXPECT_EQ(frames.size(), 10u + 7u);
  for (std::size_t i = 1; i < frames.size(); ++i)
    EXPECT_LE(frames[i - 1].timestamp_us, frames[i].timestamp_us);
}

}  // namespace
}  // namespace beaconcast::capture
